"""Exception hierarchy for setlearn."""


class SetLearnError(Exception):
    """Base class for all setlearn errors."""
    pass


class ModelViolationError(SetLearnError):
    """Raised when a world or label set breaks the learning model (e.g. empty target set)."""
    pass


class WorldConstructionError(SetLearnError):
    """Raised when world parameters cannot be realized."""
    pass


class NoClosedFormError(SetLearnError):
    """Raised when exact expected losses are requested from a world that cannot provide them."""
    pass


class MetricMismatchError(SetLearnError):
    """Raised when pair vectors over different index sets are compared."""
    pass


class ConfigError(SetLearnError):
    """Raised when an experiment config fails validation."""

    def __init__(self, messages):
        self.messages = list(messages) if not isinstance(messages, str) else [messages]
        super().__init__('; '.join(self.messages))


class LearnerError(SetLearnError):
    """Base class for learner failures; recorded per trial by the harness."""
    retryable = False


class NoConsistentHypothesisError(LearnerError):
    """No class member is consistent with the training set."""
    pass


class EmptyPlausibleSetError(LearnerError):
    """The recall-filtered plausible set is empty."""
    pass


class SurrogateSelectionError(LearnerError):
    """No member passes both realizable surrogate conditions; more data may help."""
    retryable = True
