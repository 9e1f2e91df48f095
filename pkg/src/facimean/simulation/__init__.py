"""Designs with known truth, Lindeberg profiling, and the Monte Carlo drivers."""

from .config import (
    CoverageReport,
    DiscrepancyReport,
    FitReport,
    SimulationConfig,
    load_config,
    persist_report,
    read_report,
)
from .designs import (
    Cauchy,
    HeteroNormal,
    IidNormal,
    IidUniform,
    SymmetricT,
    SymmetricTwoPoint,
    generate_sample,
    lindeberg_profile,
    raikov_diagnostic,
)
from .experiments import (
    coverage_experiment,
    discrepancy_experiment,
    discrepancy_report,
    fclt_fit_experiment,
    ks_distance,
    max_ratio_experiment,
    replication_rng,
)
