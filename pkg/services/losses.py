"""Precision, recall and scalar losses of set-function hypotheses.

Conventions:
    - an empty output has precision loss 0 (it outputs nothing wrong);
    - an empty target set is a model violation and is rejected.
"""

from __future__ import annotations

import logging
import math
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from models.errors import ModelViolationError, NoClosedFormError
from models.hypothesis import Hypothesis, HypothesisClass
from models.label_set import LabelSet
from models.types import EvaluationMode, FrontierPoint, LossMethod, LossReport
from utils.rng import SeedStream, as_generator

if TYPE_CHECKING:
    from services.worlds import World

logger = logging.getLogger(__name__)


def make_report(
    precision_loss: float,
    recall_loss: float,
    method: LossMethod,
    trials: Optional[int] = None,
    precision_se: Optional[float] = None,
    recall_se: Optional[float] = None,
) -> LossReport:
    """Build a LossReport; scalar loss is always the mean of the two components."""
    return {
        'precision_loss': float(precision_loss),
        'recall_loss': float(recall_loss),
        'scalar_loss': (float(precision_loss) + float(recall_loss)) / 2.0,
        'method': method,
        'trials': trials,
        'precision_se': precision_se,
        'recall_se': recall_se,
    }


def scalar_payoff(report: LossReport) -> float:
    """Payoff form used by the lower-bound constructions: 1 - scalar loss."""
    return 1.0 - report['scalar_loss']


# Per-input losses on label sets

def _require_target(target: LabelSet, x: Optional[int] = None) -> None:
    if target.is_empty():
        where = f" at input {x}" if x is not None else ""
        raise ModelViolationError(f"Empty target set{where}")


def set_precision_loss(output: LabelSet, target: LabelSet) -> float:
    """|output \\ target| / |output|, 0 for an empty output."""
    _require_target(target)
    n_out = output.size()
    if n_out == 0:
        return 0.0
    return output.difference_size(target) / n_out


def set_recall_loss(output: LabelSet, target: LabelSet) -> float:
    """|target \\ output| / |target|."""
    _require_target(target)
    return target.difference_size(output) / target.size()


def set_losses(output: LabelSet, target: LabelSet) -> Tuple[float, float]:
    _require_target(target)
    n_out = output.size()
    common = output.intersection_size(target)
    precision = 0.0 if n_out == 0 else (n_out - common) / n_out
    recall = (target.size() - common) / target.size()
    return precision, recall


def precision_loss_at(g: Hypothesis, g_target: Hypothesis, x: int) -> float:
    target = g_target.eval(x)
    _require_target(target, x)
    return set_precision_loss(g.eval(x), target)


def recall_loss_at(g: Hypothesis, g_target: Hypothesis, x: int) -> float:
    target = g_target.eval(x)
    _require_target(target, x)
    return set_recall_loss(g.eval(x), target)


def empirical_losses(g: Hypothesis, g_target: Hypothesis, xs: Sequence[int]) -> LossReport:
    """Mean per-input losses over xs (repeated inputs count once per occurrence)."""
    if len(xs) == 0:
        raise ValueError("empirical_losses needs at least one input")
    precision_sum = 0.0
    recall_sum = 0.0
    for x in xs:
        target = g_target.eval(x)
        _require_target(target, x)
        precision, recall = set_losses(g.eval(x), target)
        precision_sum += precision
        recall_sum += recall
    m = len(xs)
    return make_report(precision_sum / m, recall_sum / m, 'empirical')


# Expected losses

def _weighted_losses(g: Hypothesis, cases: Iterable[Tuple[float, int, LabelSet]]) -> Tuple[float, float]:
    precision = 0.0
    recall = 0.0
    for weight, x, target in cases:
        p, r = set_losses(g.eval(x), target)
        precision += weight * p
        recall += weight * r
    return precision, recall


def exact_losses(g: Hypothesis, world: 'World') -> LossReport:
    """Analytic expectation: closed form, else enumeration of the target law."""
    closed = world.closed_form(g.id)
    if closed is not None:
        return make_report(closed[0], closed[1], 'closed_form')

    cases = world.enumerate_cases()
    if cases is None:
        raise NoClosedFormError(
            f"World {world.label!r} has no closed form or enumerable expectation for {g.id!r}"
        )
    precision, recall = _weighted_losses(g, cases)
    return make_report(precision, recall, 'enumeration')


def monte_carlo_losses(
    g: Hypothesis,
    world: 'World',
    trials: int,
    rng: 'np.random.Generator | SeedStream | int | None' = None,
) -> LossReport:
    """Sample means over ``trials`` inputs drawn from the world's input model."""
    if trials < 2:
        raise ValueError("Monte-Carlo evaluation needs at least 2 trials")
    generator = as_generator(rng)
    xs = world.sample_inputs(trials, generator)
    precision = np.empty(trials)
    recall = np.empty(trials)
    for i, x in enumerate(xs):
        precision[i], recall[i] = set_losses(g.eval(int(x)), world.target(int(x)))
    scale = math.sqrt(trials)
    return make_report(
        precision.mean(),
        recall.mean(),
        'monte_carlo',
        trials=trials,
        precision_se=float(precision.std(ddof=1) / scale),
        recall_se=float(recall.std(ddof=1) / scale),
    )


def expected_losses(
    g: Hypothesis,
    world: 'World',
    mode: EvaluationMode = 'exact',
    trials: int = 100000,
    rng: 'np.random.Generator | SeedStream | int | None' = None,
) -> LossReport:
    """Expected losses of g under the world's input distribution and target.

    Args:
        g: Hypothesis to evaluate
        world: Data-generating world
        mode: 'exact' (closed form or enumeration) or 'monte_carlo'
        trials: Monte-Carlo input count
        rng: Monte-Carlo randomness

    Raises:
        NoClosedFormError: exact mode on a world without an analytic expectation
    """
    if mode == 'exact':
        return exact_losses(g, world)
    if mode == 'monte_carlo':
        return monte_carlo_losses(g, world, trials, rng)
    raise ValueError(f"Unknown evaluation mode {mode!r}")


def best_available_losses(
    g: Hypothesis,
    world: 'World',
    trials: int,
    rng: 'np.random.Generator | SeedStream | int | None' = None,
) -> LossReport:
    """Exact losses when the world supports them, Monte-Carlo otherwise."""
    try:
        return exact_losses(g, world)
    except NoClosedFormError:
        logger.debug(f"No exact expectation for {g.id!r} in {world.label!r}; using Monte-Carlo")
        return monte_carlo_losses(g, world, trials, rng)


# Pareto frontier

def dominates(a: Tuple[float, float], b: Tuple[float, float]) -> bool:
    """a weakly better in both losses and strictly better in one."""
    return a[0] <= b[0] and a[1] <= b[1] and (a[0] < b[0] or a[1] < b[1])


def pareto_filter(points: Sequence[FrontierPoint]) -> List[FrontierPoint]:
    """Non-dominated points, in input order."""
    # Sort by (precision, recall); a point is dominated iff an earlier point
    # has recall <= its recall and differs from it.
    order = sorted(range(len(points)), key=lambda i: (points[i]['precision_loss'], points[i]['recall_loss']))
    keep = set()
    best_recall = math.inf
    best_pair: Optional[Tuple[float, float]] = None
    for i in order:
        pair = (points[i]['precision_loss'], points[i]['recall_loss'])
        if pair[1] < best_recall:
            keep.add(i)
            best_recall = pair[1]
            best_pair = pair
        elif pair == best_pair:
            keep.add(i)
    return [points[i] for i in range(len(points)) if i in keep]


def pareto_frontier(hypotheses: HypothesisClass, world: 'World') -> List[FrontierPoint]:
    """Members of the class that no other member dominates in (precision, recall)."""
    points: List[FrontierPoint] = []
    for member in hypotheses:
        report = exact_losses(member, world)
        points.append({
            'hypothesis_id': member.id,
            'precision_loss': report['precision_loss'],
            'recall_loss': report['recall_loss'],
        })
    frontier = pareto_filter(points)
    logger.debug(f"Pareto frontier of {len(points)} members has {len(frontier)} points")
    return frontier


# Semi-realizable separation gap

def semi_realizable_gap(world: 'World', tolerance: float = 1e-12) -> float:
    """Δ_D: smallest gap of E[|g ∩ t| / (n_g n_t)] below E[1/n_t] over members with positive precision loss.

    Returns math.inf when every member has zero precision loss.

    Raises:
        NoClosedFormError: the world's target law is not enumerable
    """
    cases = world.enumerate_cases()
    if cases is None:
        raise NoClosedFormError(f"World {world.label!r} is not enumerable")
    cases = list(cases)
    inverse_target = sum(weight / target.size() for weight, _, target in cases)

    gap = math.inf
    for member in world.hypotheses:
        precision, _ = _weighted_losses(member, cases)
        if precision <= tolerance:
            continue
        overlap = 0.0
        for weight, x, target in cases:
            output = member.eval(x)
            if output.size():
                overlap += weight * output.intersection_size(target) / (output.size() * target.size())
        gap = min(gap, inverse_target - overlap)
    return gap
