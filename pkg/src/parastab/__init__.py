"""Exact stability-chamber invariants and transformation groups for
weighted flag data on marked curves.

Everything computes over ``fractions.Fraction``; no floats, no rounding.
"""

from .autgroup import (
    LIFT_FAITHFUL_MIN_GENUS,
    AutResult,
    CurveData,
    OrdersResult,
    automorphism_group,
    candidate_transforms,
    concentrated_orders,
    iso_transforms,
    trivial_curve,
)
from .chamber import (
    ChamberInvariant,
    Wall,
    admissible_types,
    chamber_invariant,
    count_admissible,
    max_subdegree,
    same_numerical_chamber,
    subdegree_bounds,
    walls_crossed,
)
from .errors import DomainError, InputError, PrecisionError
from .local_matrix import (
    HeckeReport,
    IndexMaps,
    Laurent,
    LaurentMatrix,
    TruncLaurent,
    cyclic_matrix,
    h_matrix,
    hecke_conjugation_check,
    index_maps,
    inner_trace_conditions,
    inverse_exact,
    inverse_series,
    is_inner,
    is_parabolic,
    is_pure_tensor,
    mp_closed_form,
    mp_matrix,
    rank1_factor,
    sigma_reshuffle,
    twist,
    xi_matrix,
)
from .transform_group import (
    NumTransform,
    apply_to_degree,
    apply_to_weights,
    compose,
    dual_weights,
    hecke_weights,
    identity_transform,
    inverse,
    is_dual_free,
    make_transform,
    reduce_dual_rank2,
)
from .weights_core import (
    DimsResult,
    GenericityResult,
    GenericityWitness,
    GenusBounds,
    ParabolicType,
    WeightSystem,
    dim_nonreduced_stratum,
    dims,
    genus_bounds,
    is_concentrated,
    is_degree_generic,
    is_generic,
    normalize,
    owt,
    parabolic_type,
    pdeg,
    s_min,
    stability_check,
    t_number,
    wall_values,
    weight_system,
)

__version__ = "0.1.0"

__all__ = [
    "AutResult",
    "ChamberInvariant",
    "CurveData",
    "DimsResult",
    "DomainError",
    "GenericityResult",
    "GenericityWitness",
    "GenusBounds",
    "HeckeReport",
    "IndexMaps",
    "InputError",
    "LIFT_FAITHFUL_MIN_GENUS",
    "Laurent",
    "LaurentMatrix",
    "NumTransform",
    "OrdersResult",
    "ParabolicType",
    "PrecisionError",
    "TruncLaurent",
    "Wall",
    "WeightSystem",
    "admissible_types",
    "apply_to_degree",
    "apply_to_weights",
    "automorphism_group",
    "candidate_transforms",
    "chamber_invariant",
    "compose",
    "concentrated_orders",
    "count_admissible",
    "cyclic_matrix",
    "dim_nonreduced_stratum",
    "dims",
    "dual_weights",
    "genus_bounds",
    "h_matrix",
    "hecke_conjugation_check",
    "hecke_weights",
    "identity_transform",
    "index_maps",
    "inner_trace_conditions",
    "inverse",
    "inverse_exact",
    "inverse_series",
    "is_concentrated",
    "is_degree_generic",
    "is_dual_free",
    "is_generic",
    "is_inner",
    "is_parabolic",
    "is_pure_tensor",
    "iso_transforms",
    "make_transform",
    "max_subdegree",
    "mp_closed_form",
    "mp_matrix",
    "normalize",
    "owt",
    "parabolic_type",
    "pdeg",
    "rank1_factor",
    "reduce_dual_rank2",
    "s_min",
    "same_numerical_chamber",
    "sigma_reshuffle",
    "stability_check",
    "subdegree_bounds",
    "t_number",
    "wall_values",
    "trivial_curve",
    "twist",
    "walls_crossed",
    "weight_system",
    "xi_matrix",
]
