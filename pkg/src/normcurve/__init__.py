"""Normal bundles of immersed rational curves in projective space, computed exactly."""

from .binform import BinForm
from .curve import ParamCurve, ValidationReport, random_immersed_curve, validate
from .deform import DeformationSpec, compare, lift, phi_rank, predicted_h0, predicted_splitting, xi_class
from .exactfield import ExactMatrix, FieldSpec, kernel_basis, rank, rank_rel
from .localmodel import TailClass, kernel_dim_exact, kernel_dim_model, leading_degree, tail_from_xi
from .splitting import SplittingType, h0_conormal, profile_to_type, splitting_type

__all__ = [
    "BinForm", "DeformationSpec", "ExactMatrix", "FieldSpec", "ParamCurve", "SplittingType",
    "TailClass", "ValidationReport", "compare", "h0_conormal", "kernel_basis", "kernel_dim_exact",
    "kernel_dim_model", "leading_degree", "lift", "phi_rank", "predicted_h0", "predicted_splitting",
    "profile_to_type", "random_immersed_curve", "rank", "rank_rel", "splitting_type", "tail_from_xi",
    "validate", "xi_class",
]
