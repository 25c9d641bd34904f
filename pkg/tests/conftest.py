"""Shared fixtures."""

import pytest

from models.hypothesis import Hypothesis, HypothesisClass
from models.label_set import LabelSet
from services.worlds import TrainingSet


def pytest_configure(config):
    config.addinivalue_line('markers', 'slow: full experiment batteries and large verifier runs (deselect with -m "not slow")')


@pytest.fixture
def small_class():
    """Three members over inputs 0 and 1.

    a = {0: 1..4, 1: {5, 6}}, b = {0: {1, 2}, 1: {5}}, c = {0: {1}, 1: {7}}.
    """
    a = Hypothesis.from_table('a', {0: LabelSet.from_range(1, 4), 1: LabelSet.from_ids([5, 6])})
    b = Hypothesis.from_table('b', {0: LabelSet.from_ids([1, 2]), 1: LabelSet.from_ids([5])})
    c = Hypothesis.from_table('c', {0: LabelSet.from_ids([1]), 1: LabelSet.from_ids([7])})
    return HypothesisClass([a, b, c])


@pytest.fixture
def small_data():
    """a and b are consistent with it; c misses indices 1 and 2."""
    return TrainingSet(xs=(0, 1, 0), vs=(1, 5, 2))
