"""Absolute separability and absolute PPT of bipartite states, from spectra.

Decides membership of the Gurvits-Barnum maximal ball, absolute separability
of qubit-qudit states and absolute PPT of qutrit-qudit states directly from
the sorted eigenvalue spectrum, maximizes state purity over those constraint
sets, and evaluates the closed-form candidate optima and the equivalent
smallest-enclosing-ball radii.
"""

from .closedform import (
    ConjectureReport,
    DomainError,
    conj_max_purity_2xn,
    conj_max_purity_3xn,
    conj_radius,
    conj_spectrum_2xn,
    conj_spectrum_3xn,
    two_qubit_optimum,
    verify_conjecture,
)
from .core import (
    ClassifyReport,
    CriterionKind,
    CriterionMargin,
    DimensionMismatch,
    NegativeEigenvalue,
    NotNormalized,
    Spectrum,
    Sym3,
    UnsupportedDimensions,
    WrongLength,
    abs_ppt_3xn_margin,
    abs_ppt_3xn_matrices,
    abs_sep_2xn_margin,
    classify,
    hs_radius,
    maximal_ball_margin,
    min_eig_sym3,
    purity,
    validate_spectrum,
)
from .optimizer import (
    OptimizationResult,
    Problem,
    SolverOptions,
    local_solve,
    maximize_purity,
    penalized_objective,
    project_to_simplex,
    sample_start,
)
from .oracle import (
    BudgetExceeded,
    GridSpec,
    enumerate_sorted_compositions,
    grid_max_purity,
)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "ClassifyReport",
    "ConjectureReport",
    "CriterionKind",
    "CriterionMargin",
    "DimensionMismatch",
    "DomainError",
    "GridSpec",
    "NegativeEigenvalue",
    "NotNormalized",
    "OptimizationResult",
    "Problem",
    "SolverOptions",
    "Spectrum",
    "Sym3",
    "UnsupportedDimensions",
    "WrongLength",
    "abs_ppt_3xn_margin",
    "abs_ppt_3xn_matrices",
    "abs_sep_2xn_margin",
    "classify",
    "conj_max_purity_2xn",
    "conj_max_purity_3xn",
    "conj_radius",
    "conj_spectrum_2xn",
    "conj_spectrum_3xn",
    "enumerate_sorted_compositions",
    "grid_max_purity",
    "hs_radius",
    "local_solve",
    "maximal_ball_margin",
    "maximize_purity",
    "min_eig_sym3",
    "penalized_objective",
    "project_to_simplex",
    "purity",
    "sample_start",
    "two_qubit_optimum",
    "validate_spectrum",
    "verify_conjecture",
]
