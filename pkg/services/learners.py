"""Hypothesis-selection algorithms that see only the class and the training set.

All learners are proper (they return a class member) and break ties by class
order: the first member wins.
"""

from __future__ import annotations

import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from models.errors import EmptyPlausibleSetError, NoConsistentHypothesisError
from models.hypothesis import Hypothesis, HypothesisClass
from models.label_set import LabelSet
from models.types import LearnerOutput
from services.worlds import TrainingSet

logger = logging.getLogger(__name__)

TRUNCATION = 4
LOG_TRUNCATION = math.log2(TRUNCATION)


class MemberStats:
    """Per-member output sizes n_g(x_i) and hits 1{v_i in g(x_i)} over a training set."""

    def __init__(self, hypotheses: HypothesisClass, data: TrainingSet) -> None:
        self.m = data.m
        self.sizes: Dict[str, np.ndarray] = {}
        self.hits: Dict[str, np.ndarray] = {}
        for member in hypotheses:
            outputs: Dict[int, LabelSet] = {}
            sizes = np.empty(self.m, dtype=np.int64)
            hits = np.empty(self.m, dtype=bool)
            for i, (x, v) in enumerate(zip(data.xs, data.vs)):
                labels = outputs.get(x)
                if labels is None:
                    labels = outputs[x] = member.eval(x)
                sizes[i] = labels.size()
                hits[i] = v in labels
            self.sizes[member.id] = sizes
            self.hits[member.id] = hits

    def mistakes(self, hypothesis_id: str) -> int:
        """|I_g|: number of indices whose observed label g misses."""
        return int(self.m - np.count_nonzero(self.hits[hypothesis_id]))


def _output(
    learner: str,
    chosen: str,
    stats: MemberStats,
    objective: Optional[Dict[str, float]] = None,
    plausible: Optional[Dict[str, bool]] = None,
    extra: Optional[Dict[str, float]] = None,
) -> LearnerOutput:
    return {
        'learner': learner,
        'chosen': chosen,
        'mistakes': {hid: stats.mistakes(hid) for hid in stats.sizes},
        'objective': dict(objective or {}),
        'plausible': dict(plausible or {}),
        'extra': dict(extra or {}),
    }


def _check_data(data: TrainingSet) -> None:
    if data.m < 1:
        raise ValueError("Learners need a non-empty training set")


def erm_consistent(hypotheses: HypothesisClass, data: TrainingSet) -> LearnerOutput:
    """First member with zero empirical mistakes (the naive ERM baseline)."""
    _check_data(data)
    stats = MemberStats(hypotheses, data)
    for member in hypotheses:
        if stats.mistakes(member.id) == 0:
            logger.debug(f"ERM picked {member.id!r}")
            return _output('erm_consistent', member.id, stats)
    raise NoConsistentHypothesisError("No class member is consistent with the training set")


def ml_realizable(hypotheses: HypothesisClass, data: TrainingSet) -> LearnerOutput:
    """Maximum likelihood: the consistent member with the smallest sum of log2 output sizes."""
    _check_data(data)
    stats = MemberStats(hypotheses, data)
    objective: Dict[str, float] = {}
    best: Optional[Tuple[float, str]] = None
    for member in hypotheses:
        if stats.mistakes(member.id) != 0:
            continue
        value = float(np.log2(stats.sizes[member.id]).sum())
        objective[member.id] = value
        if best is None or value < best[0]:
            best = (value, member.id)
    if best is None:
        raise NoConsistentHypothesisError("No consistent member: the data are not realizable by this class")
    consistent = {member.id: member.id in objective for member in hypotheses}
    return _output('ml_realizable', best[1], stats, objective, consistent, {'log_size_sum': best[0]})


def default_slack(class_size: int, m: int, delta: float) -> float:
    """2 * sqrt(log2(|H| / delta) / m)."""
    return 2.0 * math.sqrt(math.log2(class_size / delta) / m)


def truncated_log_ratio(sizes_a: np.ndarray, sizes_b: np.ndarray) -> np.ndarray:
    """Per-index log2[(a ∧ 4b) / (b ∧ 4a)].

    Empty outputs take the limit of the ratio: +log2(4) when only b is empty,
    -log2(4) when only a is empty and 0 when both are.
    """
    a = sizes_a.astype(float)
    b = sizes_b.astype(float)
    result = np.zeros(len(a))
    both = (a > 0) & (b > 0)
    result[both] = np.log2(np.minimum(a[both], TRUNCATION * b[both]) / np.minimum(b[both], TRUNCATION * a[both]))
    result[(a > 0) & (b == 0)] = LOG_TRUNCATION
    result[(a == 0) & (b > 0)] = -LOG_TRUNCATION
    return result


def modified_ml(
    hypotheses: HypothesisClass,
    data: TrainingSet,
    r: float,
    slack: Optional[float] = None,
    delta: float = 0.1,
) -> LearnerOutput:
    """Recall-filtered minimax over truncated log output-size ratios.

    Ĥ keeps members with |I_g| <= m (r + slack); the output minimizes, over
    g' in Ĥ, the maximum over g in Ĥ of the mean truncated log ratio.

    Args:
        hypotheses: Hypothesis class
        data: Training set
        r: Target recall loss
        slack: Recall slack; defaults to 2 * sqrt(log2(|H| / delta) / m)
        delta: Confidence parameter for the default slack

    Raises:
        EmptyPlausibleSetError: no member passes the recall filter
    """
    _check_data(data)
    if slack is None:
        slack = default_slack(len(hypotheses), data.m, delta)
    if slack < 0:
        raise ValueError("slack must be non-negative")
    stats = MemberStats(hypotheses, data)
    threshold = data.m * (r + slack)
    plausible = {member.id: stats.mistakes(member.id) <= threshold for member in hypotheses}
    candidates: List[Hypothesis] = [member for member in hypotheses if plausible[member.id]]
    if not candidates:
        raise EmptyPlausibleSetError(f"No member makes at most {threshold:.3f} mistakes (r={r}, slack={slack:.4f})")

    objective: Dict[str, float] = {}
    best: Optional[Tuple[float, str]] = None
    for candidate in candidates:
        worst = -math.inf
        for rival in candidates:
            value = float(truncated_log_ratio(stats.sizes[candidate.id], stats.sizes[rival.id]).sum()) / data.m
            worst = max(worst, value)
        objective[candidate.id] = worst
        if best is None or worst < best[0]:
            best = (worst, candidate.id)
    assert best is not None
    logger.debug(f"modified_ml: |Ĥ|={len(candidates)} minimax={best[0]:.6f} chosen={best[1]!r}")
    return _output(
        'modified_ml', best[1], stats, objective, plausible,
        {'threshold': threshold, 'slack': slack, 'minimax_value': best[0]},
    )


def semi_realizable_learner(hypotheses: HypothesisClass, data: TrainingSet, tol: float = 0.0) -> LearnerOutput:
    """Maximize S(g) = mean of 1{v_i in g(x_i)} / n_g(x_i), then minimize mistakes.

    Among members with S(g) >= max S - tol, the one with the fewest empirical
    mistakes is returned.
    """
    _check_data(data)
    if tol < 0:
        raise ValueError("tol must be non-negative")
    stats = MemberStats(hypotheses, data)
    scores: Dict[str, float] = {}
    for member in hypotheses:
        sizes = stats.sizes[member.id]
        hits = stats.hits[member.id]
        weights = np.zeros(data.m)
        weights[hits] = 1.0 / sizes[hits]
        scores[member.id] = float(weights.sum()) / data.m
    top = max(scores.values())
    shortlisted = {member.id: scores[member.id] >= top - tol for member in hypotheses}
    best: Optional[Tuple[int, str]] = None
    for member in hypotheses:
        if not shortlisted[member.id]:
            continue
        mistakes = stats.mistakes(member.id)
        if best is None or mistakes < best[0]:
            best = (mistakes, member.id)
    assert best is not None
    return _output('semi_realizable', best[1], stats, scores, shortlisted, {'max_score': top, 'tol': tol})
