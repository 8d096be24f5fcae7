"""Shape-constrained estimation of discrete probability mass functions.

The package fits a possibly infinitely supported discrete distribution from
frequency data three ways (the raw empirical pmf, its monotone Grenander
projection, and a convex stack of the two whose weight is selected by
closed-form leave-one-out cross-validation) and calibrates Monte-Carlo
global confidence bands around any of them.  A simulation harness and a CLI
reproduce distance, score, risk, and coverage experiments end to end from a
single integer seed.
"""

from .bands import (
    ConfidenceBand,
    confidence_band,
    estimate_sup_quantile,
    sample_gaussian_limit,
)
from .estimators import DecreasingProjection, StackedGrenander
from .isotonic import (
    gamma_vector,
    grenander,
    loo_grenander,
    loo_projection_matrix,
    project_decreasing,
)
from .pmf import (
    FrequencyVector,
    as_generator,
    cdf,
    derived_generator,
    empirical,
    lk_distance,
    loo_empirical,
    sample_frequencies,
)
from .scoring import expected_score, marshall_gap, pointwise_loss, s1_mixture_profile
from .simulation import (
    BAND_ESTIMATOR_NAMES,
    ESTIMATOR_NAMES,
    MODEL_NAMES,
    CoverageRow,
    ReplicationResult,
    RiskPoint,
    coverage_experiment,
    model_pmf,
    risk_curve,
    run_replications,
)
from .stacking import (
    BetaDiagnostics,
    MixtureFit,
    cv_criterion,
    fit_stacked,
    scaled_loo_projections,
    stacking_weight,
    stone_weight,
)

__version__ = "0.1.0"

__all__ = [
    "BAND_ESTIMATOR_NAMES",
    "BetaDiagnostics",
    "ConfidenceBand",
    "CoverageRow",
    "DecreasingProjection",
    "ESTIMATOR_NAMES",
    "FrequencyVector",
    "MODEL_NAMES",
    "MixtureFit",
    "ReplicationResult",
    "RiskPoint",
    "StackedGrenander",
    "as_generator",
    "cdf",
    "confidence_band",
    "coverage_experiment",
    "cv_criterion",
    "derived_generator",
    "empirical",
    "estimate_sup_quantile",
    "expected_score",
    "fit_stacked",
    "gamma_vector",
    "grenander",
    "lk_distance",
    "loo_empirical",
    "loo_grenander",
    "loo_projection_matrix",
    "marshall_gap",
    "model_pmf",
    "pointwise_loss",
    "project_decreasing",
    "risk_curve",
    "run_replications",
    "s1_mixture_profile",
    "sample_frequencies",
    "sample_gaussian_limit",
    "scaled_loo_projections",
    "stacking_weight",
    "stone_weight",
    "__version__",
]
