"""Type definitions for setlearn.

Record-shaped results (loss reports, learner outputs, verifier reports, trial
records and configs) are TypedDicts so they serialize to JSON without adapters.
"""

from typing import Any, Dict, List, Literal, Optional, TypedDict


# Model literals
HypothesisKind = Literal["extensional", "intensional"]
InputModel = Literal["categorical", "fresh"]
EvaluationMode = Literal["exact", "monte_carlo"]
LossMethod = Literal["closed_form", "enumeration", "monte_carlo", "empirical"]
WorldKind = Literal[
    "example1",
    "scalar_lb",
    "pareto_lb",
    "semi_lb",
    "random_finite",
    "semi_realizable",
]
LearnerName = Literal[
    "erm_consistent",
    "ml_realizable",
    "modified_ml",
    "semi_realizable",
    "surrogate_realizable",
    "surrogate_agnostic",
]
OutputFormat = Literal["csv", "json"]


class LossReport(TypedDict):
    """Precision, recall and scalar losses of one hypothesis.

    Attributes:
        precision_loss: In [0, 1]
        recall_loss: In [0, 1]
        scalar_loss: Mean of the two losses
        method: How the numbers were obtained
        trials: Number of Monte-Carlo inputs (None unless method is monte_carlo)
        precision_se: Standard error of precision_loss (Monte-Carlo only)
        recall_se: Standard error of recall_loss (Monte-Carlo only)
    """
    precision_loss: float
    recall_loss: float
    scalar_loss: float
    method: LossMethod
    trials: Optional[int]
    precision_se: Optional[float]
    recall_se: Optional[float]


class FrontierPoint(TypedDict):
    """One non-dominated member of a hypothesis class."""
    hypothesis_id: str
    precision_loss: float
    recall_loss: float


# Learner types
class LearnerOutput(TypedDict):
    """Result of a hypothesis-selection algorithm.

    Attributes:
        learner: Learner name
        chosen: Id of the selected class member
        mistakes: |I_g| per member (number of i with v_i not in g(x_i))
        objective: Objective value per examined member
        plausible: Membership flag in the plausible set per member
        extra: Learner-specific scalars (thresholds, minimax value, ...)
    """
    learner: str
    chosen: str
    mistakes: Dict[str, int]
    objective: Dict[str, float]
    plausible: Dict[str, bool]
    extra: Dict[str, float]


# Oracle types
class Violation(TypedDict):
    """A single failed check inside a verifier."""
    instance: str
    observed: float
    bound: float


class VerificationReport(TypedDict):
    """Outcome of a brute-force verifier.

    Attributes:
        name: Verifier id
        instances_checked: Number of instances examined
        violations: Failed checks
        passed: True iff violations is empty
        details: Verifier-specific values (estimates, maxima, notes)
    """
    name: str
    instances_checked: int
    violations: List[Violation]
    passed: bool
    details: Dict[str, Any]


# Config types
class WorldSpec(TypedDict, total=False):
    """JSON world spec: kind, constructor parameters and seed."""
    schema_version: int
    kind: WorldKind
    label: str
    params: Dict[str, Any]
    seed: int


class LearnerSpec(TypedDict, total=False):
    """JSON learner spec."""
    name: LearnerName
    params: Dict[str, Any]


class ExperimentConfig(TypedDict, total=False):
    """Validated experiment config.

    Attributes:
        schema_version: Config schema version
        experiment: Experiment id
        worlds: World specs evaluated in this experiment
        learners: Learner specs (name and parameters)
        m_schedule: Strictly increasing sample sizes
        trials: Trials per (world, m)
        seed: Root seed
        resample_world: Rebuild randomized worlds for every trial
        mc_inputs: Monte-Carlo fresh inputs when no closed form exists
        success_epsilon: Loss threshold for the per-(learner, m) success fraction
        output: Output directory
    """
    schema_version: int
    experiment: str
    worlds: List[WorldSpec]
    learners: List[LearnerSpec]
    m_schedule: List[int]
    trials: int
    seed: int
    resample_world: bool
    mc_inputs: int
    success_epsilon: Optional[float]
    output: Optional[str]


# Harness types
class TrialRecord(TypedDict):
    """One learner run on one sampled training set.

    Attributes:
        experiment: Experiment id (config experiment and world label)
        learner: Learner name
        m: Training-set size
        trial: Trial index
        chosen_id: Selected hypothesis id ('' when the learner failed)
        expected: Expected losses of the chosen member
        empirical: Empirical losses of the chosen member on the training inputs
        seed: Root seed of the run
        error: Error class and message when the learner failed, else ''
        wall_time: Seconds spent in the learner
    """
    experiment: str
    learner: str
    m: int
    trial: int
    chosen_id: str
    expected: Optional[LossReport]
    empirical: Optional[LossReport]
    seed: int
    error: str
    wall_time: float


class SummaryRow(TypedDict):
    """Per-(experiment, learner, m) aggregate."""
    experiment: str
    learner: str
    m: int
    trials: int
    failures: int
    mean_precision_loss: Optional[float]
    mean_recall_loss: Optional[float]
    mean_scalar_loss: Optional[float]
    successes: Optional[int]
    success_rate: Optional[float]
    success_ci_low: Optional[float]
    success_ci_high: Optional[float]


class WorldKindInfo(TypedDict):
    """Entry of the world catalogue printed by `worlds list`."""
    kind: str
    input_model: InputModel
    params: Dict[str, str]
    description: str


# Config sections (for type hints in config usage)
class LoggingConfig(TypedDict, total=False):
    level: str
    format: str
    file: Optional[str]


class HarnessConfig(TypedDict, total=False):
    workers: int
    mc_inputs: int
    float_format: str


__all__ = [
    'HypothesisKind',
    'InputModel',
    'EvaluationMode',
    'LossMethod',
    'WorldKind',
    'LearnerName',
    'OutputFormat',
    'LossReport',
    'FrontierPoint',
    'LearnerOutput',
    'Violation',
    'VerificationReport',
    'WorldSpec',
    'LearnerSpec',
    'ExperimentConfig',
    'TrialRecord',
    'SummaryRow',
    'WorldKindInfo',
    'LoggingConfig',
    'HarnessConfig',
]
