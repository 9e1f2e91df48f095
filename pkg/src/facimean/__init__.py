"""Functional asymptotic confidence intervals for a common mean.

Student processes built on data-based time functions, the Wiener limit
laws of their sup, endpoint and integral functionals, the intervals those
laws yield, and a Monte Carlo harness to check coverage and fit.
"""

from .errors import (
    ConfigError,
    DegenerateSample,
    DegenerateWeightedCenter,
    DegenerateWeights,
    DomainError,
    FaciError,
    TooFewObservations,
    UnsupportedDesign,
    ZeroTimeIndex,
)
from .faci_builder import (
    ConfidenceInterval,
    FixedT0,
    IntegralWeighted,
    SupIntersection,
    build_interval,
    faci_integral,
    faci_sup,
    faci_t0,
)
from .kernels import BACKEND
from .student_core import (
    CenteredSquares,
    Known,
    OracleVariance,
    RawSquares,
    SampleMean,
    StepProcess,
    VarianceProfile,
    endpoint_functional,
    integral_functional,
    max_ratio_diagnostic,
    nu_weights,
    self_normalized_process,
    self_normalized_sum,
    student_process,
    student_statistic,
    sup_abs_functional,
    time_function,
)
from .wiener_limits import (
    Endpoint,
    Integral,
    SupAbs,
    functional_limit_quantile,
    normal_quantile,
    simulate_wiener_path,
    sup_abs_wiener_cdf,
    sup_abs_wiener_quantile,
)

__version__ = "0.1.0"
