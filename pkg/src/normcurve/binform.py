"""Binary forms: homogeneous polynomials in U0, U1.

Coefficient convention, used by every matrix in the package:
``coeffs[j]`` is the coefficient of ``U0**(d-j) * U1**j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .exactfield import ExactMatrix, FieldSpec


@dataclass(frozen=True)
class BinForm:
    coeffs: tuple
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.coeffs) == 0:
            raise ValueError("a binary form needs at least one coefficient")

    @classmethod
    def make(cls, coeffs: Sequence, field: FieldSpec) -> BinForm:
        return cls(tuple(field(c) for c in coeffs), field)

    @classmethod
    def zero(cls, d: int, field: FieldSpec) -> BinForm:
        return cls((field.zero(),) * (d + 1), field)

    @classmethod
    def monomial(cls, d: int, j: int, field: FieldSpec, coeff=1) -> BinForm:
        """``coeff * U0**(d-j) * U1**j``."""
        c = [0] * (d + 1)
        c[j] = coeff
        return cls.make(c, field)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def __add__(self, other: BinForm) -> BinForm:
        if other.degree != self.degree:
            raise ValueError("cannot add forms of different degree")
        return BinForm.make([a + b for a, b in zip(self.coeffs, other.coeffs)], self.field)

    def __sub__(self, other: BinForm) -> BinForm:
        return self + other.scale(-1)

    def __mul__(self, other: BinForm) -> BinForm:
        return bf_mul(self, other)

    def scale(self, c) -> BinForm:
        c = self.field(c)
        return BinForm.make([c * x for x in self.coeffs], self.field)

    def evaluate(self, u0, u1):
        d = self.degree
        return self.field(sum(c * u0 ** (d - j) * u1 ** j for j, c in enumerate(self.coeffs)))

    def __str__(self) -> str:
        d = self.degree
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mono = []
            for name, e in (("U0", d - j), ("U1", j)):
                if e == 1:
                    mono.append(name)
                elif e > 1:
                    mono.append(f"{name}^{e}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append("*".join(mono))
            else:
                terms.append("*".join([str(c)] + mono))
        return " + ".join(terms) if terms else "0"


def bf_partial(f: BinForm, i: int) -> BinForm:
    """Partial derivative with respect to U0 (``i=0``) or U1 (``i=1``)."""
    d = f.degree
    if d < 1:
        raise ValueError("cannot differentiate a form of degree 0")
    c = f.coeffs
    if i == 0:
        return BinForm.make([(d - j) * c[j] for j in range(d)], f.field)
    if i == 1:
        return BinForm.make([(j + 1) * c[j + 1] for j in range(d)], f.field)
    raise ValueError(f"axis must be 0 or 1, got {i}")


def bf_mul(f: BinForm, g: BinForm) -> BinForm:
    out = [0] * (f.degree + g.degree + 1)
    for i, a in enumerate(f.coeffs):
        if a == 0:
            continue
        for j, b in enumerate(g.coeffs):
            out[i + j] += a * b
    return BinForm.make(out, f.field)


def bf_pow(f: BinForm, k: int) -> BinForm:
    out = BinForm.make([1], f.field)
    for _ in range(k):
        out = bf_mul(out, f)
    return out


# -- gcd via dehomogenisation at U0 = 1 -------------------------------------
# A form f of degree d maps to p(z) = sum c_j z^j.  Factors of U1 become
# factors of z; the U0-power content of f is d - deg p and is tracked apart.

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_rem(a: list, b: list, field: FieldSpec) -> list:
    a = list(a)
    lead_inv = field.inv(b[-1])
    while len(a) >= len(b) and a:
        q = field(a[-1] * lead_inv)
        shift = len(a) - len(b)
        for k, bk in enumerate(b):
            a[shift + k] = field(a[shift + k] - q * bk)
        _trim(a)
    return a


def _poly_gcd(a: list, b: list, field: FieldSpec) -> list:
    while b:
        a, b = b, _poly_rem(a, b, field)
    return a


def bf_gcd(fs: Sequence[BinForm]) -> BinForm:
    """Greatest common divisor, scaled so the top U1-power coefficient is 1."""
    nonzero = [f for f in fs if not f.is_zero()]
    if not nonzero:
        raise ValueError("gcd of zero forms is undefined")
    field = nonzero[0].field
    g: list = []
    u0_content = None
    for f in nonzero:
        p = _trim(list(f.coeffs))
        k = f.degree - (len(p) - 1)
        u0_content = k if u0_content is None else min(u0_content, k)
        g = _poly_gcd(g, p, field) if g else p
    lead_inv = field.inv(g[-1])
    g = [field(c * lead_inv) for c in g]
    # U0**k * homog(g) keeps the coefficient list and raises the degree by k.
    return BinForm.make(g + [0] * u0_content, field)


def bf_coord_change(f: BinForm, g: Sequence[Sequence]) -> BinForm:
    """``f`` composed with the substitution ``U -> g @ U``.

    Returns h with h(U0, U1) = f(g00*U0 + g01*U1, g10*U0 + g11*U1), so that
    changing by g1 and then by g2 is changing by ``g1 @ g2``.
    """
    field = f.field
    (a, b), (c, e) = [[field(x) for x in row] for row in g]
    if field(a * e - b * c) == 0:
        raise ValueError("coordinate change matrix is singular")
    d = f.degree
    l0 = BinForm.make([a, b], field)
    l1 = BinForm.make([c, e], field)
    p0 = [BinForm.make([1], field)]
    p1 = [BinForm.make([1], field)]
    for _ in range(d):
        p0.append(bf_mul(p0[-1], l0))
        p1.append(bf_mul(p1[-1], l1))
    out = BinForm.zero(d, field)
    for j, cj in enumerate(f.coeffs):
        if cj != 0:
            out = out + bf_mul(p0[d - j], p1[j]).scale(cj)
    return out


def bf_random(d: int, rng, field: FieldSpec) -> BinForm:
    """Random degree-``d`` form with coefficients drawn by ``field.random``."""
    if d < 0:
        raise ValueError("degree must be non-negative")
    return BinForm(tuple(field.random(rng) for _ in range(d + 1)), field)


def toeplitz_block(f: BinForm, src_deg: int) -> ExactMatrix:
    """Matrix of ``p -> f*p`` from degree ``src_deg`` to degree ``src_deg + deg f``."""
    if src_deg < 0:
        raise ValueError("source degree must be non-negative")
    k = src_deg
    rows = k + f.degree + 1
    zero = f.field.zero()
    entries = [zero] * (rows * (k + 1))
    for i in range(k + 1):
        for j, c in enumerate(f.coeffs):
            entries[(i + j) * (k + 1) + i] = c
    return ExactMatrix(rows, k + 1, tuple(entries), f.field)
