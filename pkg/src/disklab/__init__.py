"""Computational function theory on the unit disk: inner and outer
functions, finite Blaschke products, weighted composition operators and
certification of inner-function preservers."""

__version__ = "0.1.0"

from .blaschke import FiniteBlaschke, PreimageError, blaschke_compose, blaschke_preimages
from .compose import (
    OperatorMatrix,
    WeightedCompositionOperator,
    apply,
    dirichlet_mult_check,
    lindelof_check,
    littlewood_check,
    monomial_matrix,
)
from .config import DEFAULT_TOLERANCES, Tolerances
from .disk import BoundaryGrid, RadialLadder
from .inner import (
    InnerFunction,
    NotDivisibleError,
    SingularInner,
    SingularMeasure,
    frostman_scan,
    inner_divides,
    inner_quotient,
    singular_mass_estimate,
)
from .outer import OuterFunction, factorize, outer_from_modulus, smirnov_diagnostic
from .preserver import (
    MonomialAction,
    PreserverReport,
    corollary_check,
    phi_a_image,
    rank_one_apply,
    reconstruct,
    relation_check,
    surjectivity_probe,
    synthesize,
)
from .series import TaylorSeries
from .spaces import SpaceNorm, blaschke_distance_probe, hp_norm

__all__ = [
    "BoundaryGrid",
    "DEFAULT_TOLERANCES",
    "FiniteBlaschke",
    "InnerFunction",
    "MonomialAction",
    "NotDivisibleError",
    "OperatorMatrix",
    "OuterFunction",
    "PreimageError",
    "PreserverReport",
    "RadialLadder",
    "SingularInner",
    "SingularMeasure",
    "SpaceNorm",
    "TaylorSeries",
    "Tolerances",
    "WeightedCompositionOperator",
    "apply",
    "blaschke_compose",
    "blaschke_distance_probe",
    "blaschke_preimages",
    "corollary_check",
    "dirichlet_mult_check",
    "factorize",
    "frostman_scan",
    "hp_norm",
    "inner_divides",
    "inner_quotient",
    "lindelof_check",
    "littlewood_check",
    "monomial_matrix",
    "outer_from_modulus",
    "phi_a_image",
    "rank_one_apply",
    "reconstruct",
    "relation_check",
    "singular_mass_estimate",
    "smirnov_diagnostic",
    "surjectivity_probe",
    "synthesize",
]
