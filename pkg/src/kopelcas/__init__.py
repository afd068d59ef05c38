"""Exact analysis of an adaptive duopoly map.

Fixed points are enumerated as certified algebraic numbers, stability is
decided by polynomial sign queries, and the parameter-space certificates
that summarise both are machine-verified against their derivations.
"""

from .certificates import (
    EquilibriumCountClass,
    IdentityResult,
    NamedCertificate,
    StableCountClass,
    all_identities_hold,
    build_certificates,
    classify_equilibrium_count,
    classify_stable_best_response,
    classify_stable_homogeneous,
    verify_all,
    verify_identity,
)
from .exactpoly import MPoly, dense_to_mpoly, parse_poly, resultant
from .model import (
    Equilibrium,
    ModelParams,
    StabilityReport,
    State,
    Trajectory,
    all_stay_in_unit_square,
    e0_stable,
    equilibria,
    equilibrium_cubic,
    equilibrium_report,
    iterate,
    jacobian,
    jury_report,
    stability_conditions,
    step,
    triangular_system,
    y_relation,
)
from .rational import coerce_rational, format_rational, parse_rational
from .realroots import (
    AlgebraicReal,
    algebraic_image,
    isolate_real_roots,
    refine,
    sign_at,
    sturm_sign_count,
)
from .scanner import (
    ScanCell,
    ScanGrid,
    ScanSpec,
    emit_grid,
    scan_equilibrium_count,
    scan_stability_best_response,
    scan_stability_homogeneous,
)

__version__ = "0.1.0"

__all__ = [
    "AlgebraicReal",
    "Equilibrium",
    "EquilibriumCountClass",
    "IdentityResult",
    "MPoly",
    "ModelParams",
    "NamedCertificate",
    "ScanCell",
    "ScanGrid",
    "ScanSpec",
    "StabilityReport",
    "StableCountClass",
    "State",
    "Trajectory",
    "algebraic_image",
    "all_identities_hold",
    "all_stay_in_unit_square",
    "build_certificates",
    "classify_equilibrium_count",
    "classify_stable_best_response",
    "classify_stable_homogeneous",
    "coerce_rational",
    "dense_to_mpoly",
    "e0_stable",
    "emit_grid",
    "equilibria",
    "equilibrium_cubic",
    "equilibrium_report",
    "format_rational",
    "isolate_real_roots",
    "iterate",
    "jacobian",
    "jury_report",
    "parse_poly",
    "parse_rational",
    "refine",
    "resultant",
    "scan_equilibrium_count",
    "scan_stability_best_response",
    "scan_stability_homogeneous",
    "sign_at",
    "stability_conditions",
    "step",
    "sturm_sign_count",
    "triangular_system",
    "verify_all",
    "verify_identity",
    "y_relation",
]
