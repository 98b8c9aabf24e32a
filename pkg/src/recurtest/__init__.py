"""Independence tests between two samples of random elements in metric
spaces, based on recurrence rates, with permutation calibration, process
simulators and a Monte-Carlo power harness."""

__version__ = "0.1.0"

from .exceptions import (
    DegenerateWeightError,
    InternalConsistencyError,
    InvalidInputError,
)
from .harness import PowerResult, PowerRow, PowerStudySpec, run_power
from .inference import (
    Dependogram,
    DependogramEntry,
    TestReport,
    critical_values,
    dependogram,
    min_permutations,
    permutation_test,
)
from .metrics import (
    Metric,
    PairedDistances,
    distance,
    ensure_sample,
    paired_distances,
    pairwise_matrix,
)
from .simulate import (
    ScenarioConfig,
    arma_stationary_sd,
    fou_pair_weights,
    gen_ar_arma,
    gen_fbm,
    gen_fou,
    gen_fou2,
    gen_scenario,
    gen_white_noise,
)
from .stats_core import (
    Functional,
    StatisticSpec,
    empirical_process,
    joint_recurrence_rate,
    l1_statistic,
    l1_statistic_naive,
    l2_statistic,
    l2_statistic_naive,
    recurrence_rate,
    statistic,
    statistic_from_pairs,
    sup_statistic,
    sup_statistic_naive,
)
from .weights import GaussianWeight, estimate_weight, weight_cdf

__all__ = [
    "__version__",
    "DegenerateWeightError",
    "InternalConsistencyError",
    "InvalidInputError",
    "PowerResult",
    "PowerRow",
    "PowerStudySpec",
    "run_power",
    "Dependogram",
    "DependogramEntry",
    "TestReport",
    "critical_values",
    "dependogram",
    "min_permutations",
    "permutation_test",
    "Metric",
    "PairedDistances",
    "distance",
    "ensure_sample",
    "paired_distances",
    "pairwise_matrix",
    "ScenarioConfig",
    "arma_stationary_sd",
    "fou_pair_weights",
    "gen_ar_arma",
    "gen_fbm",
    "gen_fou",
    "gen_fou2",
    "gen_scenario",
    "gen_white_noise",
    "Functional",
    "StatisticSpec",
    "empirical_process",
    "joint_recurrence_rate",
    "l1_statistic",
    "l1_statistic_naive",
    "l2_statistic",
    "l2_statistic_naive",
    "recurrence_rate",
    "statistic",
    "statistic_from_pairs",
    "sup_statistic",
    "sup_statistic_naive",
    "GaussianWeight",
    "estimate_weight",
    "weight_cdf",
]
