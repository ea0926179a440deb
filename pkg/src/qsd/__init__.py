"""Minimum-error discrimination of qubit ensembles.

Closed-form solvers for two-state, three-state, diagonal, cone, shell, and
mirror-symmetric ensembles, an independent convex minimax oracle, and a
certificate layer (conjugate states, common point, multipliers, first-order
residuals) that every solver output must pass.
"""

from .bloch import (
    BlochVector,
    DiscriminationResult,
    HelstromCertificate,
    Povm,
    PovmElement,
    QubitState,
    WeightedEnsemble,
    validate_ensemble,
)
from .closed_form import (
    MirrorRegime,
    ThreeStateCoefficients,
    cone_ensemble,
    gram_identity_residual,
    lambdas_three_state,
    mirror_ensemble,
    mirror_regime,
    mirror_threshold,
    solve_auto,
    solve_cone,
    solve_diagonal,
    solve_mirror_symmetric,
    solve_symmetric_shell,
    solve_three_state,
    solve_two_state,
)
from .errors import (
    CertificateError,
    ConvergenceError,
    DegenerateGeometryError,
    DegenerateRatioError,
    DiscriminationError,
    GramConsistencyError,
    WeightSystemInfeasible,
)
from .family import (
    assemble_result,
    conjugates_from_common_point,
    family_residual,
    helstrom_upper_bound_check,
    povm_from_weights,
    success_probability,
    verify_optimality,
    verify_weak_family,
)
from .kkt import KktReport, kkt_residuals, recover_multipliers
from .oracle import (
    MinimaxSolution,
    classical_diagonal_oracle,
    minimax_common_point,
    minimax_objective,
    pair_lower_bound,
    random_povm_sample,
    recover_povm,
    solve_oracle,
)
from .platonic import (
    PLATONIC_KINDS,
    PRINTED_EDGE_COEFFICIENTS,
    PlatonicReference,
    PlatonicSolid,
    edge_coefficient_report,
    measured_edge_coefficient,
    platonic_ensemble,
    platonic_vertices,
    unit_edge_length,
)
from .weights import min_norm_nonneg_weights, subset_support_weights

__version__ = "0.1.0"

__all__ = [
    "BlochVector",
    "QubitState",
    "WeightedEnsemble",
    "PovmElement",
    "Povm",
    "HelstromCertificate",
    "DiscriminationResult",
    "validate_ensemble",
    "ThreeStateCoefficients",
    "MirrorRegime",
    "solve_two_state",
    "solve_three_state",
    "solve_diagonal",
    "solve_symmetric_shell",
    "solve_cone",
    "solve_mirror_symmetric",
    "solve_auto",
    "cone_ensemble",
    "mirror_ensemble",
    "mirror_regime",
    "mirror_threshold",
    "lambdas_three_state",
    "gram_identity_residual",
    "PLATONIC_KINDS",
    "PRINTED_EDGE_COEFFICIENTS",
    "PlatonicSolid",
    "PlatonicReference",
    "platonic_ensemble",
    "platonic_vertices",
    "unit_edge_length",
    "measured_edge_coefficient",
    "edge_coefficient_report",
    "MinimaxSolution",
    "minimax_common_point",
    "minimax_objective",
    "pair_lower_bound",
    "solve_oracle",
    "recover_povm",
    "classical_diagonal_oracle",
    "random_povm_sample",
    "KktReport",
    "kkt_residuals",
    "recover_multipliers",
    "assemble_result",
    "conjugates_from_common_point",
    "family_residual",
    "verify_weak_family",
    "verify_optimality",
    "success_probability",
    "helstrom_upper_bound_check",
    "povm_from_weights",
    "min_norm_nonneg_weights",
    "subset_support_weights",
    "DiscriminationError",
    "DegenerateRatioError",
    "DegenerateGeometryError",
    "GramConsistencyError",
    "WeightSystemInfeasible",
    "ConvergenceError",
    "CertificateError",
]
