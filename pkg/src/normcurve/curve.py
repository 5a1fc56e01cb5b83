"""Parametrised rational curves f = (s^0, ..., s^n): P^1 -> P^n."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .binform import BinForm, bf_coord_change, bf_gcd, bf_mul, bf_partial, bf_random
from .exactfield import ExactMatrix, FieldSpec, kernel_basis, rank


class SamplingExhausted(RuntimeError):
    pass


@dataclass(frozen=True)
class ParamCurve:
    forms: tuple[BinForm, ...]
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.forms) < 3:
            raise ValueError("need n >= 2, i.e. at least three forms")
        d = self.forms[0].degree
        if d < 1:
            raise ValueError("curve degree must be at least 1")
        if any(f.degree != d for f in self.forms):
            raise ValueError("all forms must share one degree")
        if any(f.field != self.field for f in self.forms):
            raise ValueError("forms live over a different field")
        if all(f.is_zero() for f in self.forms):
            raise ValueError("all forms are zero")

    @classmethod
    def from_coeffs(cls, rows: Sequence[Sequence], field: FieldSpec) -> ParamCurve:
        return cls(tuple(BinForm.make(r, field) for r in rows), field)

    @property
    def n(self) -> int:
        return len(self.forms) - 1

    @property
    def d(self) -> int:
        return self.forms[0].degree

    def coeff_matrix(self) -> ExactMatrix:
        """(n+1) x (d+1) matrix whose rows are the coefficient vectors."""
        return ExactMatrix.from_rows([f.coeffs for f in self.forms], self.field, self.d + 1)

    def reparametrize(self, g: Sequence[Sequence]) -> ParamCurve:
        return ParamCurve(tuple(bf_coord_change(f, g) for f in self.forms), self.field)

    def change_target(self, m: Sequence[Sequence]) -> ParamCurve:
        """Replace the forms by ``m @ (s^0, ..., s^n)``."""
        out = []
        for row in m:
            acc = BinForm.zero(self.d, self.field)
            for c, f in zip(row, self.forms):
                acc = acc + f.scale(c)
            out.append(acc)
        return ParamCurve(tuple(out), self.field)

    def __str__(self) -> str:
        return "(" + ", ".join(str(f) for f in self.forms) + ")"


@dataclass(frozen=True)
class ValidationReport:
    base_point_free: bool
    nondegenerate: bool
    immersive: bool
    witness: str | None = None
    details: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "base_point_free": self.base_point_free,
            "nondegenerate": self.nondegenerate,
            "immersive": self.immersive,
            "witness": self.witness,
        }


def jacobian(c: ParamCurve) -> list[list[BinForm]]:
    """Entry ``[i][j]`` is the partial of ``s^j`` with respect to ``U^i``."""
    return [[bf_partial(s, i) for s in c.forms] for i in (0, 1)]


def jacobian_minors(c: ParamCurve) -> list[BinForm]:
    jac = jacobian(c)
    out = []
    for j in range(c.n + 1):
        for k in range(j + 1, c.n + 1):
            out.append(bf_mul(jac[0][j], jac[1][k]) - bf_mul(jac[0][k], jac[1][j]))
    return out


def validate(c: ParamCurve) -> ValidationReport:
    content = bf_gcd(c.forms)
    bpf = content.degree == 0

    deps = kernel_basis(c.coeff_matrix().transpose())
    nondeg = not deps

    minors = jacobian_minors(c)
    if all(m.is_zero() for m in minors):
        minor_gcd = None
        immersive = False
    else:
        minor_gcd = bf_gcd(minors)
        immersive = minor_gcd.degree == 0

    if not bpf:
        witness = str(content)
    elif not immersive:
        witness = "all Jacobian minors vanish" if minor_gcd is None else str(minor_gcd)
    elif not nondeg:
        witness = "[" + ", ".join(str(x) for x in deps[0]) + "]"
    else:
        witness = None
    return ValidationReport(bpf, nondeg, immersive, witness,
                            {"content": content, "minor_gcd": minor_gcd, "dependencies": deps})


def nondegeneracy_required(n: int, d: int) -> bool:
    return n + 1 <= d + 1


def span_rank(forms: Sequence[BinForm]) -> int:
    field = forms[0].field
    return rank(ExactMatrix.from_rows([f.coeffs for f in forms], field, forms[0].degree + 1))


def random_immersed_curve(n: int, d: int, rng, field: FieldSpec, max_attempts: int = 100) -> ParamCurve:
    """Rejection-sample a base-point-free immersed curve of degree ``d`` in P^n.

    Linear independence of the forms is required only when n + 1 <= d + 1.
    """
    if n < 2 or d < 1:
        raise ValueError("need n >= 2 and d >= 1")
    field.check_degree(d)
    need_nondeg = nondegeneracy_required(n, d)
    for _ in range(max_attempts):
        forms = tuple(bf_random(d, rng, field) for _ in range(n + 1))
        if all(f.is_zero() for f in forms):
            continue
        c = ParamCurve(forms, field)
        rep = validate(c)
        if rep.immersive and rep.base_point_free and (rep.nondegenerate or not need_nondeg):
            return c
    raise SamplingExhausted(f"no immersed curve with n={n}, d={d} over {field} in {max_attempts} attempts")


def random_plane_curve(d: int, rng, field: FieldSpec, max_attempts: int = 100) -> ParamCurve:
    """Immersed plane curve with linearly independent forms (needs d >= 2)."""
    if d < 2:
        raise ValueError("a plane curve with independent forms needs d >= 2")
    return random_immersed_curve(2, d, rng, field, max_attempts)


def random_invertible(size: int, rng, field: FieldSpec, bound: int | None = None) -> list[list]:
    """Random invertible matrix; ``bound`` limits rational entries to [-bound, bound]."""
    while True:
        if bound is not None and not field.is_prime_field:
            m = [[field(rng.randint(-bound, bound)) for _ in range(size)] for _ in range(size)]
        else:
            m = [[field.random(rng) for _ in range(size)] for _ in range(size)]
        if rank(ExactMatrix.from_rows(m, field, size)) == size:
            return m
