"""Data models and type definitions for setlearn."""

from .errors import (
    ConfigError,
    EmptyPlausibleSetError,
    LearnerError,
    MetricMismatchError,
    ModelViolationError,
    NoClosedFormError,
    NoConsistentHypothesisError,
    SetLearnError,
    SurrogateSelectionError,
    WorldConstructionError,
)
from .hypothesis import Hypothesis, HypothesisClass
from .label_set import LabelSet
from .types import (
    ExperimentConfig,
    FrontierPoint,
    LearnerOutput,
    LossReport,
    SummaryRow,
    TrialRecord,
    VerificationReport,
    WorldSpec,
)

__all__ = [
    'LabelSet',
    'Hypothesis',
    'HypothesisClass',
    'LossReport',
    'FrontierPoint',
    'LearnerOutput',
    'VerificationReport',
    'WorldSpec',
    'ExperimentConfig',
    'TrialRecord',
    'SummaryRow',
    'SetLearnError',
    'ModelViolationError',
    'WorldConstructionError',
    'NoClosedFormError',
    'MetricMismatchError',
    'ConfigError',
    'LearnerError',
    'NoConsistentHypothesisError',
    'EmptyPlausibleSetError',
    'SurrogateSelectionError',
]
