"""Laurent-tail coordinates of the class of t at a point, and kernel models.

The class xi of t lives in H^1(O(2-2d)), which is dual to H^0(O(2d-4)).
Pairing xi with h_m = V0^(2d-4-m) V1^m (V = frame @ U, so the chosen point
is V = [1:0] and z = V1/V0) lands in H^1(O(-2)), realised as the
one-dimensional cokernel of J_{3d-4}.  Under the residue pairing z^m pairs
with the tail coefficient c_j iff j + m = 2d-3, so c_j = phi_{2d-3-j}.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .binform import BinForm, bf_coord_change, bf_mul, bf_partial
from .curve import ParamCurve, random_invertible
from .deform import connecting_rank
from .exactfield import ExactMatrix, FieldSpec, kernel_basis, left_kernel_basis, rank
from .splitting import jacobian_block

CECH = "cech"
TRUNC = "trunc"
CONVENTIONS = (CECH, TRUNC)


class DegenerateFrameError(ValueError):
    pass


@dataclass(frozen=True)
class TailClass:
    d: int
    point: tuple
    c: tuple
    field: FieldSpec

    def __post_init__(self) -> None:
        if len(self.c) != max(0, 2 * self.d - 3):
            raise ValueError(f"tail of length {len(self.c)} for d={self.d}")

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.c)


def frame_point(frame: Sequence[Sequence], field: FieldSpec) -> tuple:
    """The point U with frame @ U proportional to (1, 0)."""
    (a, b), (c, e) = [[field(x) for x in row] for row in frame]
    # frame^{-1} @ (1, 0) is proportional to (e, -c).
    return (field(e), field(-c))


def random_frame(rng, field: FieldSpec) -> list[list]:
    return random_invertible(2, rng, field, bound=20)


@lru_cache(maxsize=256)
def _cokernel_functional(g: ParamCurve) -> list:
    d = g.d
    jm = jacobian_block(g.forms, d, 3 * d - 4, g.field)
    lk = left_kernel_basis(jm)
    if len(lk) != 1:
        raise DegenerateFrameError(f"cokernel of J_{3 * d - 4} has dimension {len(lk)}, expected 1")
    v = lk[0]
    lead = next(x for x in v if x != 0)
    return tuple(g.field.div(x, lead) for x in v)


def _pairings(g: ParamCurve, t: BinForm, frame: Sequence[Sequence]) -> list:
    """phi_m for m = 0 .. 2d-4."""
    d, field = g.d, g.field
    lam = _cokernel_functional(g)
    q0, q1 = bf_partial(t, 0), bf_partial(t, 1)
    out = []
    for m in range(2 * d - 3):
        h = bf_coord_change(BinForm.monomial(2 * d - 4, m, field), frame)
        vec = (*bf_mul(h, q0).coeffs, *bf_mul(h, q1).coeffs)
        out.append(field(sum(x * y for x, y in zip(lam, vec))))
    return out


def tail_from_xi(g: ParamCurve, t: BinForm, frame: Sequence[Sequence], point: Sequence | None = None) -> TailClass:
    """Tail coordinates (c_1 .. c_{2d-3}) of the class of ``t`` at the frame's point."""
    d, field = g.d, g.field
    if d < 2:
        raise ValueError("tail is empty for d < 2")
    if t.degree != d:
        raise ValueError(f"t has degree {t.degree}, base has degree {d}")
    (a, b), (c, e) = [[field(x) for x in row] for row in frame]
    if field(a * e - b * c) == 0:
        raise DegenerateFrameError("frame is singular")
    p = frame_point(frame, field)
    if point is not None:
        u0, u1 = (field(x) for x in point)
        if field(u0 * p[1] - u1 * p[0]) != 0:
            raise DegenerateFrameError("frame does not move the given point to [1:0]")
    phi = _pairings(g, t, frame)
    cs = tuple(phi[2 * d - 3 - j] for j in range(1, 2 * d - 2))
    return TailClass(d, p, cs, field)


def tail_matrix(g: ParamCurve, frame: Sequence[Sequence]) -> ExactMatrix:
    """(2d-3) x (d+1) matrix of t -> tail on the monomial basis."""
    d, field = g.d, g.field
    cols = [tail_from_xi(g, BinForm.monomial(d, j, field), frame).c for j in range(d + 1)]
    return ExactMatrix.from_rows(cols, field, 2 * d - 3).transpose()


def leading_degree(tc: TailClass) -> int | None:
    return next((j for j, x in enumerate(tc.c, start=1) if x != 0), None)


def _check_twist(d: int, a: int) -> None:
    if not d - 1 <= a <= 3 * d - 2:
        raise ValueError(f"twist {a} outside [{d - 1}, {3 * d - 2}]")


def kernel_dim_exact(g: ParamCurve, t: BinForm, a: int) -> int:
    """Kernel of multiplication by the class of t, H^0(O(a-d)) -> H^1(O(a+2-3d))."""
    _check_twist(g.d, a)
    return (a - g.d + 1) - connecting_rank(g, [t], a)


def kernel_dim_model(tc: TailClass, a: int, convention: str) -> int:
    d = tc.d
    _check_twist(d, a)
    dom = a - d + 1
    if convention == TRUNC:
        l = leading_degree(tc)
        if l is None:
            return dom
        return min(dom, max(0, 2 * a + l - 4 * d + 3))
    if convention == CECH:
        if dom <= 0:
            return 0
        c = (0,) + tuple(tc.c)  # c[j] for j = 1 .. 2d-3
        rows = []
        for j in range(a - d + 1, 2 * d - 2):
            # coefficient of z^j in p(z) n(z) is sum_i p_i c_{j-i}
            rows.append([c[j - i] if 1 <= j - i <= 2 * d - 3 else 0 for i in range(dom)])
        if not rows:
            return dom
        return dom - rank(ExactMatrix.from_rows(rows, tc.field, dom))
    raise ValueError(f"unknown convention {convention!r}")
