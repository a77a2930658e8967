"""Extremes of the extended skew-normal (ESN) distribution.

Quadrature-backed distribution functions, Mills-ratio envelopes, von Mises tail
representations, Gumbel normalizing constants and convergence-rate diagnostics.
"""

from .constants import (
    GumbelValue,
    LogSampleSize,
    NormalizingConstants,
    closed_form_constants,
    gumbel_cdf,
    max_cdf,
    normalizing_constants,
    solve_bn,
)
from .core import (
    EsnParams,
    EsnSample,
    cdf,
    cdf_bivariate,
    cdf_grid,
    log_cdf,
    log_pdf,
    log_survival,
    pdf,
    quantile,
    sample,
    survival,
    survival_grid,
)
from .errors import (
    AccuracyError,
    BoundaryError,
    DomainError,
    EsnError,
    NumericError,
    PrecisionError,
    QuadratureError,
    RegimeError,
    RejectedParametersError,
    ResourceError,
    SolverError,
)
from .mills import MillsCase, MillsEnvelope, MillsRatioAsymptote, classify_case, mills_bounds, mills_ratio, mills_ratio_asymptote
from .precision import DEFAULT_CONTEXT, FAST_CONTEXT, LAB_CONTEXT, PrecisionContext
from .rates import RateProfile, closed_form_rate_check, h_function, kappa, omega, rate_constant, rate_profile
from .simulation import MaximaExperiment, Normalization, run_maxima_experiment
from .tail import (
    TailExpansionResult,
    TailRepresentation,
    integral_g_over_f,
    tail_expansion,
    von_mises_parts,
    von_mises_survival,
)

__all__ = [name for name in dir() if not name.startswith("_")]
