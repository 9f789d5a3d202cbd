"""Group-level informativeness metrics for choice-prediction feedback.

When a group answers a subjective multi-choice question and additionally
predicts how others will choose, the joint distribution of (choice,
prediction) pairs reveals more than the choice counts alone: genuinely
split preferences ("equal affection") show choice-dependent predictions,
while clueless uniform guessing ("random selection") does not.  The
variety metrics quantify that gap as an f-divergence between the joint
distribution and its uninformative projection.
"""

from .distributions import (
    JointDistribution,
    is_uninformative,
    make_joint,
    marginals,
    mix,
    uninformative_projection,
)
from .divergence import (
    BUILTIN_KINDS,
    HELLINGER,
    KL,
    PEARSON,
    TVD,
    DivergenceKind,
    baseline,
    f_divergence,
    f_variety,
    get_kind,
    tvd_variety_binary_closed_form,
)
from .estimation import (
    GroupComparison,
    Observation,
    SampleSet,
    compare_groups_equalized,
    empirical_f_variety,
    empirical_joint,
)
from .experiments import SweepConfig, SweepResult, SweepRow, run_sweep, write_sweep
from .sampling import RandomStream
from .special import regularized_incomplete_beta
from .survey import (
    AnalysisReport,
    RespondentFilter,
    SurveyDataset,
    analyze,
    extract_samples,
    load_survey,
)
from .synthesis import (
    BetaParams,
    PRESETS,
    PopulationModel,
    beta_sample,
    continuous_f_variety,
    discretize_prediction,
    draw_samples,
    exact_discretized_joint,
    get_preset,
)

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BUILTIN_KINDS",
    "BetaParams",
    "DivergenceKind",
    "GroupComparison",
    "HELLINGER",
    "JointDistribution",
    "KL",
    "Observation",
    "PEARSON",
    "PRESETS",
    "PopulationModel",
    "RandomStream",
    "RespondentFilter",
    "SampleSet",
    "SurveyDataset",
    "SweepConfig",
    "SweepResult",
    "SweepRow",
    "TVD",
    "analyze",
    "baseline",
    "beta_sample",
    "compare_groups_equalized",
    "continuous_f_variety",
    "discretize_prediction",
    "draw_samples",
    "empirical_f_variety",
    "empirical_joint",
    "exact_discretized_joint",
    "extract_samples",
    "f_divergence",
    "f_variety",
    "get_kind",
    "get_preset",
    "is_uninformative",
    "load_survey",
    "make_joint",
    "marginals",
    "mix",
    "regularized_incomplete_beta",
    "run_sweep",
    "tvd_variety_binary_closed_form",
    "uninformative_projection",
    "write_sweep",
]
