"""Surrogate metric between hypotheses and the surrogate learners.

For a reference hypothesis g, the pair vector v_g maps each ordered pair
(g', g'') of class members to the mean, over training indices, of the mass the
uniform distribution on g(x_i) puts on g'(x_i) \\ g''(x_i). d_H is the l-inf
distance between pair vectors.

Indices are grouped by the tuple of label sets the reference and member
hypotheses output there, and each group's label space is cut into atoms on
which membership is constant, so the |H|**3 contraction runs over atoms rather
than over labels or indices.
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import MetricMismatchError, SurrogateSelectionError
from models.hypothesis import Hypothesis, HypothesisClass
from models.label_set import LabelSet
from models.types import LearnerOutput
from services.learners import MemberStats
from services.worlds import TrainingSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class PairVector:
    """v_g over ordered member pairs.

    Attributes:
        ids: Member ids indexing rows (g') and columns (g'')
        entries: |H| x |H| array, entries[a, b] = v_g(ids[a], ids[b])
        m: Number of training indices it was computed over
        reference: Id of g (the empirical hypothesis is 'empirical')
    """
    ids: Tuple[str, ...]
    entries: np.ndarray
    m: int
    reference: str

    def entry(self, first: str, second: str) -> float:
        return float(self.entries[self.ids.index(first), self.ids.index(second)])

    def as_dict(self) -> Dict[Tuple[str, str], float]:
        return {
            (a, b): float(self.entries[i, j])
            for i, a in enumerate(self.ids)
            for j, b in enumerate(self.ids)
        }


def uniform_mass(g: Hypothesis, x: int, labels: LabelSet) -> float:
    """|g(x) ∩ A| / n_g(x); 0 when g(x) is empty."""
    output = g.eval(x)
    size = output.size()
    if size == 0:
        return 0.0
    return output.intersection_size(labels) / size


def _atoms(sets: Sequence[LabelSet]) -> Tuple[np.ndarray, np.ndarray]:
    """Atom sizes and membership matrix (sets x atoms) for a family of label sets."""
    points = set()
    for labels in sets:
        for lo, hi in labels.intervals:
            points.add(lo)
            points.add(hi + 1)
    ordered = sorted(points)
    starts = ordered[:-1]
    sizes = np.asarray([b - a for a, b in zip(ordered, ordered[1:])], dtype=float)
    membership = np.zeros((len(sets), len(starts)), dtype=float)
    for row, labels in enumerate(sets):
        for col, start in enumerate(starts):
            if start in labels:
                membership[row, col] = 1.0
    return sizes, membership


def _grouped(xs: Sequence[int], hypotheses: Sequence[Hypothesis]) -> List[Tuple[int, Tuple[LabelSet, ...]]]:
    """(count, outputs) per distinct output signature, in first-seen order."""
    per_input = Counter(xs)
    groups: Dict[Tuple[LabelSet, ...], int] = {}
    for x, count in per_input.items():
        signature = tuple(h.eval(x) for h in hypotheses)
        groups[signature] = groups.get(signature, 0) + count
    return [(count, signature) for signature, count in groups.items()]


def pair_vectors(
    references: Sequence[Hypothesis],
    hypotheses: HypothesisClass,
    xs: Sequence[int],
) -> Dict[str, PairVector]:
    """v_g for every reference g, over the class's ordered pairs, on inputs xs."""
    if len(xs) == 0:
        raise ValueError("Pair vectors need at least one input")
    members = list(hypotheses)
    k = len(members)
    total = np.zeros((len(references), k, k))
    family = list(references) + members
    for count, outputs in _grouped(xs, family):
        sizes, membership = _atoms(outputs)
        if sizes.size == 0:
            continue
        ref_rows = membership[:len(references)]
        mem_rows = membership[len(references):]
        ref_sizes = ref_rows @ sizes
        with np.errstate(divide='ignore', invalid='ignore'):
            weights = np.where(ref_sizes[:, None] > 0, ref_rows * sizes / ref_sizes[:, None], 0.0)
        contribution = np.einsum('ra,ha,ka->rhk', weights, mem_rows, 1.0 - mem_rows)
        total += count * contribution
    total /= len(xs)
    ids = hypotheses.ids
    return {
        ref.id: PairVector(ids=ids, entries=total[r], m=len(xs), reference=ref.id)
        for r, ref in enumerate(references)
    }


def pair_vector(g: Hypothesis, hypotheses: HypothesisClass, xs: Sequence[int]) -> PairVector:
    """v_g(g', g'') = mean over i of uniform_mass(g, x_i, g'(x_i) \\ g''(x_i))."""
    return pair_vectors([g], hypotheses, xs)[g.id]


def pair_vector_empirical(data: TrainingSet, hypotheses: HypothesisClass) -> PairVector:
    """v_ĝ: the empirical hypothesis puts a point mass on v_i at index i."""
    if data.m < 1:
        raise ValueError("Pair vectors need a non-empty training set")
    stats = MemberStats(hypotheses, data)
    hits = np.vstack([stats.hits[hid] for hid in hypotheses.ids]).astype(float)
    entries = hits @ (1.0 - hits).T / data.m
    return PairVector(ids=hypotheses.ids, entries=entries, m=data.m, reference='empirical')


def d_H(first: PairVector, second: PairVector) -> float:
    """l-inf distance between two pair vectors over the same class and sample size."""
    if first.ids != second.ids or first.m != second.m:
        raise MetricMismatchError("Pair vectors are indexed over different classes or sample sizes")
    return float(np.max(np.abs(first.entries - second.entries)))


def d_pr(g1: Hypothesis, g2: Hypothesis, xs: Sequence[int]) -> float:
    """Mean over xs of |g1 \\ g2| / n_g1 + |g2 \\ g1| / n_g2 (empty outputs contribute 0)."""
    if len(xs) == 0:
        raise ValueError("d_pr needs at least one input")
    total = 0.0
    for x in xs:
        first = g1.eval(x)
        second = g2.eval(x)
        if first.size():
            total += first.difference_size(second) / first.size()
        if second.size():
            total += second.difference_size(first) / second.size()
    return total / len(xs)


def _surrogate_output(
    learner: str,
    chosen: str,
    stats: MemberStats,
    objective: Dict[str, float],
    flags: Dict[str, bool],
    extra: Dict[str, float],
) -> LearnerOutput:
    return {
        'learner': learner,
        'chosen': chosen,
        'mistakes': {hid: stats.mistakes(hid) for hid in stats.sizes},
        'objective': objective,
        'plausible': flags,
        'extra': extra,
    }


def surrogate_realizable(hypotheses: HypothesisClass, data: TrainingSet, epsilon: float) -> LearnerOutput:
    """First member g_out such that, for every g in the class,
    (1) v_ĝ(g, g_out) = 0, and
    (2) v_{g_out}(g_out, g) >= epsilon implies v_ĝ(g_out, g) > 0.

    Raises:
        SurrogateSelectionError: no member passes both conditions (retry with more data)
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    empirical = pair_vector_empirical(data, hypotheses)
    vectors = pair_vectors(list(hypotheses), hypotheses, data.xs)
    stats = MemberStats(hypotheses, data)

    flags: Dict[str, bool] = {}
    objective: Dict[str, float] = {}
    chosen: Optional[str] = None
    for j, member in enumerate(hypotheses):
        unexplained = empirical.entries[:, j]
        own = vectors[member.id].entries[j, :]
        observed = empirical.entries[j, :]
        condition_one = bool(np.all(unexplained == 0.0))
        condition_two = bool(np.all((own < epsilon) | (observed > 0.0)))
        flags[member.id] = condition_one and condition_two
        objective[member.id] = float(np.max(np.where(observed > 0.0, 0.0, own)))
        if chosen is None and flags[member.id]:
            chosen = member.id
    if chosen is None:
        raise SurrogateSelectionError(f"No member passes both surrogate conditions at m={data.m}, epsilon={epsilon}")
    return _surrogate_output('surrogate_realizable', chosen, stats, objective, flags, {'epsilon': epsilon})


def surrogate_agnostic(hypotheses: HypothesisClass, data: TrainingSet) -> LearnerOutput:
    """First member minimizing d_H(v_ĝ, v_g)."""
    empirical = pair_vector_empirical(data, hypotheses)
    vectors = pair_vectors(list(hypotheses), hypotheses, data.xs)
    stats = MemberStats(hypotheses, data)
    distances = {member.id: d_H(empirical, vectors[member.id]) for member in hypotheses}
    best_id = hypotheses.ids[0]
    for member in hypotheses:
        if distances[member.id] < distances[best_id]:
            best_id = member.id
    flags = {member.id: member.id == best_id for member in hypotheses}
    logger.debug(f"surrogate_agnostic: chosen={best_id!r} distance={distances[best_id]:.6f}")
    return _surrogate_output(
        'surrogate_agnostic', best_id, stats, distances, flags, {'min_distance': distances[best_id]}
    )
