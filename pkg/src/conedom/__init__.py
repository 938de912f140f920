"""Exact rational toolkit for cone orders, chain sums, dominance certificates,
hull separation, and discrete demand analysis.

Everything is computed over `fractions.Fraction`; no floating point is used
anywhere, so every verdict and certificate is exact and reproducible.
"""

from .cones import (
    Comparability,
    Cone,
    cone_contains,
    cone_membership,
    is_pointed,
    k_closure,
    negate,
    relate,
)
from .dominance import (
    Decomposition,
    DominationCertificate,
    EquivalenceReport,
    OutsideHullError,
    check_equivalences,
    decompose_in_hulls,
    dominated_element,
    dominating_element,
    dominating_element_chain,
    is_pareto_in_hull,
    pareto_optima_finite,
    validate_certificate,
)
from .linalg import (
    LinearProgram,
    LpResult,
    LpStatus,
    Vec,
    check_certificates,
    hull_membership,
    lp_solve,
    relative_interior_membership,
    vadd,
    vdot,
    vscale,
    vsub,
)
from .maximals import (
    FiniteRelation,
    GridDomain,
    PriceSystem,
    TotalPreorder,
    UTILITIES,
    budget_set,
    check_antichain_quasiconcavity,
    check_boundary_and_antichain,
    check_convexification_invariance,
    check_local_nonsatiation,
    check_maximizer_convexity,
    convexified_maximals,
    demand,
    find_quasiconcavity_violation,
    linear_utility,
    maximals,
    min_utility,
    orthant_cone,
    ratio_utility,
)
from .scene import Scene, SceneError, parse_scene, serialize_scene
from .separation import (
    DisjointnessResult,
    SeparationResult,
    hulls_disjoint,
    proper_separator,
    separator_sign_check,
    strict_separator,
)
from .sets import (
    ChainSet,
    DecomposableSet,
    FinitePointSet,
    Polyhedron,
    convex_hull,
    first_incomparable_pair,
    is_antichain,
    is_chain,
    is_grid_antichain_convex,
    materialize,
    minkowski_sum,
    upward_hull,
)
from .suite import run_suite

__version__ = "0.1.0"

__all__ = [
    "Comparability",
    "Cone",
    "cone_contains",
    "cone_membership",
    "is_pointed",
    "k_closure",
    "negate",
    "relate",
    "Decomposition",
    "DominationCertificate",
    "EquivalenceReport",
    "OutsideHullError",
    "check_equivalences",
    "decompose_in_hulls",
    "dominated_element",
    "dominating_element",
    "dominating_element_chain",
    "is_pareto_in_hull",
    "pareto_optima_finite",
    "validate_certificate",
    "LinearProgram",
    "LpResult",
    "LpStatus",
    "Vec",
    "check_certificates",
    "hull_membership",
    "lp_solve",
    "relative_interior_membership",
    "vadd",
    "vdot",
    "vscale",
    "vsub",
    "FiniteRelation",
    "GridDomain",
    "PriceSystem",
    "TotalPreorder",
    "UTILITIES",
    "budget_set",
    "check_antichain_quasiconcavity",
    "check_boundary_and_antichain",
    "check_convexification_invariance",
    "check_local_nonsatiation",
    "check_maximizer_convexity",
    "convexified_maximals",
    "demand",
    "find_quasiconcavity_violation",
    "linear_utility",
    "maximals",
    "min_utility",
    "orthant_cone",
    "ratio_utility",
    "Scene",
    "SceneError",
    "parse_scene",
    "serialize_scene",
    "DisjointnessResult",
    "SeparationResult",
    "hulls_disjoint",
    "proper_separator",
    "separator_sign_check",
    "strict_separator",
    "ChainSet",
    "DecomposableSet",
    "FinitePointSet",
    "Polyhedron",
    "convex_hull",
    "first_incomparable_pair",
    "is_antichain",
    "is_chain",
    "is_grid_antichain_convex",
    "materialize",
    "minkowski_sum",
    "upward_hull",
    "run_suite",
]
