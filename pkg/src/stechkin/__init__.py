"""Sharp constants in additive operator inequalities via scalar spectral measures.

Public surface re-exported here: symbols and measures, the parametric
constants machinery, the finite-dimensional verification oracle, the
orthonormal polynomial families, and the line/circle/expansion settings.
"""

from .errors import (
    AdmissibilityError,
    ConfigError,
    NonConvergenceError,
    StechkinError,
    TargetOutOfRangeError,
    VerificationError,
)
from .numerics import (
    QuadResult,
    SeriesResult,
    SupResult,
    integrate,
    solve_monotone,
    sum_lattice,
    sup_search,
)
from .spectral import (
    AdmissibilityReport,
    SpectralMeasure,
    Symbol,
    check_admissibility,
    norm_phi_f,
    parse_symbol,
    spectral_integral,
)
from .core import (
    ExtremalElement,
    LemmaReport,
    SharpConstants,
    additive_bound,
    best_approx,
    extremal_element,
    hlp_constant,
    hormander_coefficient,
    lemma_suite,
    m_value,
    n_value,
    small_tau_envelope,
    solve_tau,
)
from .oracle import (
    BruteForceResult,
    DiagonalInstance,
    FunctionalVector,
    TheoremResiduals,
    brute_force_best_approx,
    deviation,
    extremal_vector,
    verify_theorems,
)
from .orthopoly import (
    OrthogonalFamily,
    evaluate,
    evaluate_all,
    evaluate_with_derivatives,
    gram_matrix,
    ode_residual,
)
from .applications import (
    PointConstants,
    TaikovConstants,
    TaikovParams,
    circle_constants,
    circle_extremal_functional,
    induced_measure,
    line_constants,
    line_extremal_functional,
    opoly_constants,
    opoly_extremal_functional,
    taikov_constants,
    taikov_exponent,
    taikov_law_constant,
)

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "ConfigError", "NonConvergenceError", "StechkinError",
    "TargetOutOfRangeError", "VerificationError",
    "QuadResult", "SeriesResult", "SupResult",
    "integrate", "solve_monotone", "sum_lattice", "sup_search",
    "AdmissibilityReport", "SpectralMeasure", "Symbol",
    "check_admissibility", "norm_phi_f", "parse_symbol", "spectral_integral",
    "ExtremalElement", "LemmaReport", "SharpConstants",
    "additive_bound", "best_approx", "extremal_element", "hlp_constant",
    "hormander_coefficient", "lemma_suite", "m_value", "n_value",
    "small_tau_envelope", "solve_tau",
    "BruteForceResult", "DiagonalInstance", "FunctionalVector", "TheoremResiduals",
    "brute_force_best_approx", "deviation", "extremal_vector", "verify_theorems",
    "OrthogonalFamily", "evaluate", "evaluate_all", "evaluate_with_derivatives",
    "gram_matrix", "ode_residual",
    "PointConstants", "TaikovConstants", "TaikovParams",
    "circle_constants", "circle_extremal_functional", "induced_measure",
    "line_constants", "line_extremal_functional",
    "opoly_constants", "opoly_extremal_functional",
    "taikov_constants", "taikov_exponent", "taikov_law_constant",
    "__version__",
]
