"""
Separability metrics between two gamma distributions.

Closed-form symmetrised Kullback-Leibler divergence, the analytic
Kolmogorov-Smirnov statistic and its extension over all density
intersections, built on an exact solver for where two gamma densities
cross.
"""

from .distribution import GammaPair, GammaParams, cdf, log_pdf, mean, mode, pdf, quantile, sample, sf
from .errors import DomainError, NumericDomainError, PdfSingularityError, QuadratureError
from .intersect import (
    GeneralCaseCoefficients,
    IntersectionCase,
    IntersectionResult,
    classify,
    intersections,
    verify_intersections,
)
from .metrics import (
    MetricsReport,
    MixtureDensity,
    extended_ks,
    full_report,
    js_divergence_numeric,
    kl_divergence,
    ks_statistic,
    symmetrised_kl,
)

__version__ = "0.1.0"
