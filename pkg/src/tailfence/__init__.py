"""Heavy-tailedness of distributions measured through box-plot fences.

The package computes the probability mass a law places beyond its own
inner and outer quartile fences, compares samples against a catalog of
such profiles, and estimates the index of regular variation from sample
quartiles and fences.
"""

__version__ = "0.1.0"

from .distributions import (  # noqa: E402
    Distribution,
    Exponential,
    Frechet,
    Gamma,
    Gumbel,
    HillHorror,
    NegExponential,
    NegWeibull,
    Normal,
    Pareto,
    StudentT,
    SupportBounds,
    Uniform,
    parse_distribution,
)
from .empirical import OutlierCounts, Sample, count_outliers, empirical_boxplot, empirical_quantile, read_sample  # noqa: E402
from .errors import (  # noqa: E402
    DistSpecError,
    DomainError,
    EstimatorUndefined,
    InsufficientDataError,
    SampleFormatError,
    TailFenceError,
)
from .estimators import EstimateResult, Method, estimate, estimate_all  # noqa: E402
from .measures import (  # noqa: E402
    BoxPlotSummary,
    Comparison,
    FenceConstants,
    TailProfile,
    catalog,
    lighter_than,
    tail_profile,
    theoretical_boxplot,
)
from .diagnose import DiagnosisReport, ProportionCI, diagnose, proportion_ci  # noqa: E402
from .montecarlo import StudyConfig, StudyReport, best_method, run_study  # noqa: E402
