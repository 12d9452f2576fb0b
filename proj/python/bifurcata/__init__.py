"""Branches, spectra, and bifurcation diagrams of an interface-coupled
two-point boundary value problem.

The heavy lifting lives in the compiled extension ``bifurcata._core``;
this package re-exports its public names.
"""

from ._core import (  # noqa: F401
    BetaGrid,
    BifurcationPoint,
    BranchPoint,
    ConditionReport,
    ConfigurationError,
    DomainError,
    Nonlinearity,
    NoRootFound,
    PQ,
    SecondaryBranch,
    ShootingContext,
    SolutionProfile,
    SpectrumResult,
    __version__,
    check_conditions,
    compute_spectrum,
    find_primary_bifurcations,
    find_secondary_bifurcations,
    matching_residual,
    parity_names,
    reconstruct_solution,
    trace_primary,
    trace_secondary,
    trivial_eigenvalues,
)

__all__ = [
    "BetaGrid",
    "BifurcationPoint",
    "BranchPoint",
    "ConditionReport",
    "ConfigurationError",
    "DomainError",
    "Nonlinearity",
    "NoRootFound",
    "PQ",
    "SecondaryBranch",
    "ShootingContext",
    "SolutionProfile",
    "SpectrumResult",
    "__version__",
    "check_conditions",
    "compute_spectrum",
    "find_primary_bifurcations",
    "find_secondary_bifurcations",
    "matching_residual",
    "parity_names",
    "reconstruct_solution",
    "trace_primary",
    "trace_secondary",
    "trivial_eigenvalues",
]
