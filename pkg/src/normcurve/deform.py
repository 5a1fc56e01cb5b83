"""Lifting a plane curve into P^{2+r} and predicting the lifted normal bundle.

Given an immersed plane curve g = (s^0, s^1, s^2) of degree d and forms
t^1..t^r of degree d, the lift is f_eps = (s^0, s^1, s^2, eps*t^1, ...).  Its
conormal bundle is an extension of O(-d)^r by N_g^v = O(2-3d), classified
by the images of the pairs (d_0 t^k, d_1 t^k) modulo the Jacobian columns of
g.  At twist a the extension has

    h^0 = h^0(O(a+2-3d)) + dim ker( H^0(O(a-d))^r -> coker J_a ),

where the map sends (p_k) to sum_k (d_i t^k) p_k.  Nothing in this depends
on eps beyond eps != 0, which is why the prediction is exact.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

from .binform import BinForm, bf_partial
from .curve import ParamCurve, span_rank, validate
from .exactfield import ExactMatrix, FieldSpec, kernel_basis, rank, rank_rel
from .splitting import (
    ProfileError,
    SplittingType,
    jacobian_block,
    profile_to_type,
    splitting_type,
    twist_range,
)


class BaseCurveError(ValueError):
    """The base is not an immersed plane curve with independent forms."""


def check_base(g: ParamCurve) -> None:
    if g.n != 2:
        raise BaseCurveError(f"base must be a plane curve, got n={g.n}")
    rep = validate(g)
    if not rep.immersive:
        raise BaseCurveError(f"base is not immersed (witness {rep.witness})")
    if not rep.nondegenerate:
        raise BaseCurveError("base forms are linearly dependent")


def _check_ts(g: ParamCurve, ts: Sequence[BinForm]) -> None:
    if not ts:
        raise ValueError("need at least one t")
    for t in ts:
        if t.degree != g.d:
            raise ValueError(f"t has degree {t.degree}, base has degree {g.d}")


@dataclass(frozen=True)
class DeformationSpec:
    g: ParamCurve
    ts: tuple[BinForm, ...]
    epsilon: object

    def __post_init__(self) -> None:
        _check_ts(self.g, self.ts)

    @property
    def r(self) -> int:
        return len(self.ts)


def lift(spec: DeformationSpec) -> ParamCurve:
    g, eps = spec.g, spec.epsilon
    return ParamCurve(g.forms + tuple(t.scale(eps) for t in spec.ts), g.field)


def lift_is_degenerate(spec: DeformationSpec) -> bool:
    """True if eps = 0 or the lifted forms span less than min(n+1, d+1)."""
    if spec.g.field(spec.epsilon) == 0:
        return True
    f = lift(spec)
    return span_rank(f.forms) < min(f.n + 1, f.d + 1)


# -- the class of (d_0 t, d_1 t) ---------------------------------------------

@dataclass(frozen=True)
class XiClass:
    rep: tuple[BinForm, BinForm]
    span_basis: tuple[tuple[BinForm, BinForm], ...]

    def _matrices(self) -> tuple[ExactMatrix, ExactMatrix]:
        field = self.rep[0].field
        span = ExactMatrix.from_rows(
            [[*p0.coeffs, *p1.coeffs] for p0, p1 in self.span_basis], field).transpose()
        rep = ExactMatrix.from_rows([[*self.rep[0].coeffs, *self.rep[1].coeffs]], field).transpose()
        return span, rep

    def is_zero(self) -> bool:
        span, rep = self._matrices()
        r0, r1 = rank_rel(span, rep)
        return r0 == r1

    def ambient_dim(self) -> int:
        """Dimension of the quotient the class lives in: 2d - rank of the span."""
        span, _ = self._matrices()
        return span.rows - rank(span)


def xi_class(g: ParamCurve, t: BinForm) -> XiClass:
    if t.degree != g.d:
        raise ValueError(f"t has degree {t.degree}, base has degree {g.d}")
    return XiClass((bf_partial(t, 0), bf_partial(t, 1)),
                   tuple((bf_partial(s, 0), bf_partial(s, 1)) for s in g.forms))


def xi_is_zero(g: ParamCurve, t: BinForm) -> bool:
    return xi_class(g, t).is_zero()


# -- predictor ---------------------------------------------------------------

def connecting_rank(g: ParamCurve, ts: Sequence[BinForm], a: int) -> int:
    """Rank of (p_k) -> sum_k (d t^k) p_k into coker J_a."""
    ja = jacobian_block(g.forms, g.d, a, g.field)
    qa = jacobian_block(ts, g.d, a, g.field)
    if ja.rows == 0:
        return 0
    r0, r1 = rank_rel(ja, qa)
    return r1 - r0


def predicted_h0(g: ParamCurve, ts: Sequence[BinForm], a: int) -> int:
    """h^0 of the first-order deformed conormal bundle at twist ``a``."""
    d = g.d
    if not d - 1 <= a <= 4 * d - 1:
        raise ValueError(f"twist {a} outside [{d - 1}, {4 * d - 1}]")
    _check_ts(g, ts)
    r = len(ts)
    return max(0, a + 3 - 3 * d) + r * (a - d + 1) - connecting_rank(g, ts, a)


def predicted_profile(g: ParamCurve, ts: Sequence[BinForm]) -> dict[int, int]:
    return {a: predicted_h0(g, ts, a) for a in twist_range(g.d)}


def predicted_splitting(g: ParamCurve, ts: Sequence[BinForm], profile_out: dict | None = None) -> SplittingType:
    prof = predicted_profile(g, ts)
    if profile_out is not None:
        profile_out.update(prof)
    return profile_to_type(prof, 2 + len(ts), g.d)


def componentwise_kernel_sum(g: ParamCurve, ts: Sequence[BinForm], a: int) -> int:
    """Sum over k of the kernel dimension of the k-th map alone (diagnostic)."""
    return sum((a - g.d + 1) - connecting_rank(g, [t], a) for t in ts)


@dataclass
class ComparisonReport:
    status: str
    predicted: SplittingType | None
    direct: SplittingType | None
    match: bool | None
    predicted_profile: dict = dc_field(default_factory=dict)
    direct_profile: dict = dc_field(default_factory=dict)
    error: str | None = None

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "predicted": self.predicted.to_json() if self.predicted else None,
            "direct": self.direct.to_json() if self.direct else None,
            "match": self.match,
            "predicted_profile": {str(k): v for k, v in sorted(self.predicted_profile.items())},
            "direct_profile": {str(k): v for k, v in sorted(self.direct_profile.items())},
            "error": self.error,
        }


def compare(spec: DeformationSpec) -> ComparisonReport:
    """Predicted splitting type of the lift against the direct computation.

    Status is one of ``ok``, ``degenerate-lift`` (comparison skipped) or
    ``profile-error`` (the predicted profile is not a bundle profile).
    """
    pprof: dict = {}
    try:
        predicted = predicted_splitting(spec.g, spec.ts, pprof)
    except ProfileError as exc:
        return ComparisonReport("profile-error", None, None, None, pprof, {}, str(exc))
    if lift_is_degenerate(spec):
        return ComparisonReport("degenerate-lift", predicted, None, None, pprof)
    dprof: dict = {}
    direct = splitting_type(lift(spec), dprof)
    return ComparisonReport("ok", predicted, direct, predicted == direct, pprof, dprof)


# -- the map t -> class -------------------------------------------------------

def _phi_matrices(g: ParamCurve) -> tuple[ExactMatrix, ExactMatrix]:
    """Jacobian columns of g and the image of the monomial basis, both 2d rows."""
    d, field = g.d, g.field
    span = jacobian_block(g.forms, d, d, field)
    monos = [BinForm.monomial(d, j, field) for j in range(d + 1)]
    image = jacobian_block(monos, d, d, field)
    return span, image


def phi_rank(g: ParamCurve) -> int:
    """Rank of t -> class of (d_0 t, d_1 t) on degree-d forms."""
    check_base(g)
    if g.d < 2:
        raise BaseCurveError("need d >= 2")
    span, image = _phi_matrices(g)
    r0, r1 = rank_rel(span, image)
    return r1 - r0


def phi_kernel(g: ParamCurve) -> list[list]:
    """Coefficient vectors spanning the kernel of t -> class.

    Projection of ker[J | T] onto the T part; injective because the Jacobian
    columns of a nondegenerate base are independent.
    """
    check_base(g)
    span, image = _phi_matrices(g)
    k = span.cols
    return [v[k:] for v in kernel_basis(span.hstack(image))]


def ambient_xi_dim(g: ParamCurve) -> int:
    span, _ = _phi_matrices(g)
    return span.rows - rank(span)
