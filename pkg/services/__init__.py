"""Worlds, learners, loss evaluation, verifiers and the experiment harness."""

from .harness import ExperimentService
from .oracle import OracleService

__all__ = [
    'ExperimentService',
    'OracleService',
]
