"""Splitting type of the normal bundle from twisted conormal section counts.

For an immersion f of degree d the dual normal sequence twisted by O(a) is

    0 -> N_f^v(a) -> O(a-d)^{n+1} -> O(a-1)^2 -> 0,

with the right map given by the Jacobian of f.  Taking global sections,
h^0(N_f^v(a)) is the kernel dimension of an explicit 2a x (n+1)(a-d+1)
matrix.  Writing N_f = sum O(a'_i), h^0(N_f^v(a)) = sum max(0, a - a'_i + 1),
so second differences of the profile a -> h^0 recover the a'_i.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .binform import BinForm, bf_partial, toeplitz_block
from .curve import ParamCurve, validate
from .exactfield import ExactMatrix, FieldSpec, hstack, kernel_basis, rank


class NotImmersedError(ValueError):
    pass


class ProfileError(ValueError):
    """An h^0 profile that is not the profile of a sum of line bundles."""


@dataclass(frozen=True)
class SplittingType:
    n: int
    d: int
    a_values: tuple[int, ...]

    @property
    def raw(self) -> tuple[int, ...]:
        return tuple(self.d + a for a in self.a_values)

    def to_json(self) -> dict:
        return {"a": list(self.a_values), "raw": list(self.raw)}

    def label(self) -> str:
        return "{" + ",".join(str(a) for a in self.a_values) + "}"

    def check(self) -> None:
        n, d = self.n, self.d
        if len(self.a_values) != n - 1:
            raise ProfileError(f"{len(self.a_values)} summands for rank {n - 1}")
        if sum(self.raw) != d * (n + 1) - 2:
            raise ProfileError(f"degree sum {sum(self.raw)} != d(n+1)-2 = {d * (n + 1) - 2}")
        if any(a < 0 or a > 3 * d - 2 for a in self.a_values):
            raise ProfileError(f"a-values {self.a_values} outside [0, {3 * d - 2}]")


def twist_range(d: int) -> range:
    """Twists d-1 .. 4d-1: every a'_i <= 4d-2, plus one sentinel."""
    return range(d - 1, 4 * d)


def jacobian_block(forms: Sequence[BinForm], d: int, a: int, field: FieldSpec) -> ExactMatrix:
    """Matrix of (alpha_j) -> (sum_j d_0 s^j alpha_j, sum_j d_1 s^j alpha_j).

    Each alpha_j has degree a-d; rows are the i=0 block then the i=1 block,
    columns are grouped by j and then by monomial.
    """
    if a < d - 1:
        raise ValueError(f"twist {a} below d-1 = {d - 1}")
    k = a - d
    if k < 0:
        return ExactMatrix.zeros(2 * a, 0, field)
    rows = []
    for i in (0, 1):
        row_block = hstack((toeplitz_block(bf_partial(s, i), k) for s in forms), a, field)
        rows.extend(row_block.row_lists())
    return ExactMatrix.from_rows(rows, field, len(forms) * (k + 1))


def mu_matrix(c: ParamCurve, a: int) -> ExactMatrix:
    return jacobian_block(c.forms, c.d, a, c.field)


def h0_conormal(c: ParamCurve, a: int, with_basis: bool = False):
    """h^0(N_f^v(a)); with ``with_basis`` also a kernel basis as form tuples."""
    m = mu_matrix(c, a)
    if not with_basis:
        return m.cols - rank(m)
    k = a - c.d
    basis = []
    for v in kernel_basis(m):
        basis.append(tuple(BinForm(tuple(v[j * (k + 1):(j + 1) * (k + 1)]), c.field)
                           for j in range(c.n + 1)))
    return len(basis), basis


def h0_profile(c: ParamCurve) -> dict[int, int]:
    return {a: h0_conormal(c, a) for a in twist_range(c.d)}


def profile_to_type(profile: Mapping[int, int], n: int, d: int) -> SplittingType:
    """Decode a profile on twists d-1 .. 4d-1 into a splitting type."""
    twists = list(twist_range(d))
    missing = [a for a in twists if a not in profile]
    if missing:
        raise ProfileError(f"profile lacks twists {missing}")
    if profile[d - 1] != 0:
        raise ProfileError(f"h0 at twist d-1 is {profile[d - 1]}, expected 0")
    # Below d-1 the middle term has no sections, so h0(d-2) = 0.
    delta = {d - 1: 0}
    for a in twists[1:]:
        delta[a] = profile[a] - profile[a - 1]
    for a in twists[1:]:
        if delta[a] < delta[a - 1]:
            raise ProfileError(f"first difference drops at twist {a}")
    if delta[4 * d - 1] != n - 1:
        raise ProfileError(f"terminal first difference {delta[4 * d - 1]} != n-1 = {n - 1}")
    a_values = []
    for v in twists[1:]:
        a_values.extend([v - d] * (delta[v] - delta[v - 1]))
    st = SplittingType(n, d, tuple(sorted(a_values)))
    st.check()
    return st


def splitting_type(c: ParamCurve, profile_out: dict | None = None) -> SplittingType:
    """Splitting type of N_f for an immersed curve.

    If ``profile_out`` is given it is filled with the h^0 profile.
    """
    if not validate(c).immersive:
        raise NotImmersedError("curve is not an immersion")
    prof = h0_profile(c)
    if profile_out is not None:
        profile_out.update(prof)
    return profile_to_type(prof, c.n, c.d)
