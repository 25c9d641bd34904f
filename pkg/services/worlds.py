"""Data-generating worlds and training-set sampling.

Two input models are supported:

    categorical  a finite input set with explicit probabilities; targets are
                 materialized once, at construction.
    fresh        a simulated infinite input space where every draw mints a new
                 input id. Label ids are local to an input, so every member of
                 a fresh world outputs the same label set at every input, and
                 the target at input x is drawn from the world's target law
                 with a stream keyed by (world seed, x) and memoized.

Fresh-stream ids are ``(tag << 32) | k`` where ``tag`` is a 63-bit value drawn
from the caller's generator and ``k`` counts draws. Ids within one call never
repeat; the same stream always yields the same ids. Two different streams share
a tag with probability about T**2 / 2**64 over T calls (below 1e-7 for a
million calls).
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from threading import Lock
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from models.errors import ModelViolationError, WorldConstructionError
from models.hypothesis import Hypothesis, HypothesisClass
from models.label_set import LabelSet
from models.types import InputModel, WorldKindInfo, WorldSpec
from utils.rng import PURPOSE_TARGET, SeedStream, as_generator, as_seed

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
REPRESENTATIVE_INPUT = 0
FRESH_BLOCK_BITS = 32
FRESH_TAG_BITS = 63
FRESH_MEMO_LIMIT = 1_000_000

RngLike = Union[np.random.Generator, SeedStream, int, None]
TargetSampler = Callable[[np.random.Generator], LabelSet]
Case = Tuple[float, int, LabelSet]


def _constant(labels: LabelSet) -> Callable[[int], LabelSet]:
    def rule(x: int) -> LabelSet:
        return labels
    return rule


class World:
    """A data-generating environment.

    Attributes:
        label: Human-readable world id (used in experiment ids)
        kind: World kind (see WORLD_BUILDERS)
        hypotheses: The hypothesis class offered to learners
        input_model: 'categorical' or 'fresh'
        seed: Seed of the target law (fresh worlds) or of the construction
        spec: JSON spec that rebuilds this world
        meta: Construction facts (target member id, zero-precision member id, ...)
        memo_limit: Most fresh targets kept memoized; the memo is emptied when full
    """

    def __init__(
        self,
        label: str,
        kind: str,
        hypotheses: HypothesisClass,
        input_model: InputModel,
        seed: int,
        spec: WorldSpec,
        support: Optional[Tuple[Sequence[int], Sequence[float]]] = None,
        target_table: Optional[Dict[int, LabelSet]] = None,
        target_sampler: Optional[TargetSampler] = None,
        target_outcomes: Optional[List[Tuple[float, LabelSet]]] = None,
        closed_forms: Optional[Dict[str, Tuple[float, float]]] = None,
        meta: Optional[Dict[str, Any]] = None,
    ) -> None:
        self.label = label
        self.kind = kind
        self.hypotheses = hypotheses
        self.input_model = input_model
        self.seed = int(seed)
        self.spec = spec
        self.meta: Dict[str, Any] = dict(meta or {})
        self._closed_forms: Dict[str, Tuple[float, float]] = dict(closed_forms or {})
        self._target_outcomes = target_outcomes
        self._target_sampler = target_sampler
        self._targets: Dict[int, LabelSet] = {}
        self._targets_lock = Lock()
        self.memo_limit = FRESH_MEMO_LIMIT

        if input_model == 'categorical':
            if support is None or target_table is None:
                raise WorldConstructionError("Categorical worlds need a support and a target table")
            ids = np.asarray(support[0], dtype=np.int64)
            probs = np.asarray(support[1], dtype=float)
            if len(ids) == 0 or len(ids) != len(probs) or np.any(probs < 0):
                raise WorldConstructionError("Invalid categorical support")
            self._support_ids = ids
            self._support_probs = probs / probs.sum()
            for x in ids:
                target = target_table.get(int(x))
                if target is None or target.is_empty():
                    raise ModelViolationError(f"Empty target set at input {int(x)}")
            self._targets = dict(target_table)
        elif input_model == 'fresh':
            if target_sampler is None:
                raise WorldConstructionError("Fresh-stream worlds need a target sampler")
            if target_outcomes is not None:
                for prob, outcome in target_outcomes:
                    if outcome.is_empty() and prob > 0:
                        raise ModelViolationError("Target law puts mass on the empty set")
        else:
            raise WorldConstructionError(f"Unknown input model {input_model!r}")

        self.target_hypothesis = Hypothesis.from_rule('target', self.target)

    # Targets

    def target(self, x: int) -> LabelSet:
        """Materialized target set at x (memoized; identical on every query)."""
        cached = self._targets.get(x)
        if cached is not None:
            return cached
        if self.input_model == 'categorical':
            raise ModelViolationError(f"Input {x} is outside the support of {self.label!r}")
        stream = SeedStream(self.seed, (PURPOSE_TARGET, x))
        drawn = self._target_sampler(stream.generator())  # type: ignore[misc]
        if drawn.is_empty():
            raise ModelViolationError(f"Empty target set at input {x}")
        with self._targets_lock:
            if x not in self._targets and len(self._targets) >= self.memo_limit:
                logger.debug(f"{self.label!r}: fresh target memo reached {self.memo_limit} entries, emptying it")
                self._targets.clear()
            return self._targets.setdefault(x, drawn)

    def memoized_targets(self) -> int:
        with self._targets_lock:
            return len(self._targets)

    def forget_targets(self) -> None:
        """Drop memoized fresh targets (they are re-drawn identically on demand)."""
        if self.input_model == 'fresh':
            with self._targets_lock:
                self._targets.clear()

    # Inputs

    def sample_inputs(self, m: int, rng: RngLike) -> List[int]:
        """m inputs: categorical draws, or m unseen fresh ids (one tag per call)."""
        generator = as_generator(rng)
        if self.input_model == 'categorical':
            draws = generator.choice(self._support_ids, size=m, p=self._support_probs)
            return [int(x) for x in draws]
        if m >= 2 ** FRESH_BLOCK_BITS:
            raise ValueError("Too many fresh inputs requested in one draw")
        tag = int(generator.integers(1, 2 ** FRESH_TAG_BITS))
        base = tag << FRESH_BLOCK_BITS
        return [base + k for k in range(m)]

    @property
    def support(self) -> Optional[List[Tuple[int, float]]]:
        if self.input_model != 'categorical':
            return None
        return [(int(x), float(p)) for x, p in zip(self._support_ids, self._support_probs)]

    # Exact expectations

    def closed_form(self, hypothesis_id: str) -> Optional[Tuple[float, float]]:
        """(precision loss, recall loss) from the world's closed-form table, if listed."""
        return self._closed_forms.get(hypothesis_id)

    @property
    def closed_forms(self) -> Dict[str, Tuple[float, float]]:
        return dict(self._closed_forms)

    def enumerate_cases(self) -> Optional[List[Case]]:
        """(probability, input, target) triples covering the whole expectation, or None."""
        if self.input_model == 'categorical':
            return [
                (float(p), int(x), self._targets[int(x)])
                for x, p in zip(self._support_ids, self._support_probs)
            ]
        if self._target_outcomes is not None:
            return [(prob, REPRESENTATIVE_INPUT, outcome) for prob, outcome in self._target_outcomes]
        return None

    def __repr__(self) -> str:
        return f"World(label={self.label!r}, kind={self.kind!r}, members={list(self.hypotheses.ids)})"


@dataclass(frozen=True)
class TrainingSet:
    """Indexed (x_i, v_i) pairs in draw order."""
    xs: Tuple[int, ...]
    vs: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.xs) != len(self.vs):
            raise ValueError("xs and vs must have the same length")

    @property
    def m(self) -> int:
        return len(self.xs)

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def samples(self) -> List[Tuple[int, int]]:
        return list(zip(self.xs, self.vs))


def sample_training_set(world: World, m: int, rng: RngLike) -> TrainingSet:
    """Draw m inputs from the world and one uniform target label per input."""
    if m < 1:
        raise ValueError("Training-set size must be at least 1")
    generator = as_generator(rng)
    xs = world.sample_inputs(m, generator)
    vs: List[int] = []
    for x in xs:
        target = world.target(x)
        vs.append(target.nth(int(generator.integers(target.size()))))
    return TrainingSet(tuple(xs), tuple(vs))


# World constructions

def _spec(kind: str, params: Dict[str, Any], seed: int, label: str) -> WorldSpec:
    return {
        'schema_version': SCHEMA_VERSION,
        'kind': kind,  # type: ignore[typeddict-item]
        'label': label,
        'params': dict(params),
        'seed': int(seed),
    }


def _fresh_class(outputs: Dict[str, LabelSet], order: Sequence[str]) -> HypothesisClass:
    return HypothesisClass([Hypothesis.from_rule(name, _constant(outputs[name])) for name in order])


EXAMPLE1_MEMBERS = ('g1', 'g2', 'complete', 'empty', 'target')


def example1_world(
    n: int,
    universe_size: Optional[int] = None,
    member_order: Optional[Sequence[str]] = None,
    seed: int = 0,
    label: Optional[str] = None,
) -> World:
    """Large-target world where ERM fails.

    The target outputs {1..n} at every input; g1 outputs {n} (always correct),
    g2 outputs {n+1} (always wrong), 'complete' outputs the whole universe
    {1..|Y|} and 'empty' outputs nothing. 'target' (the target itself) can be
    added through member_order.
    """
    if n < 2:
        raise WorldConstructionError("example1_world needs n >= 2")
    universe = universe_size if universe_size is not None else 10 * n
    if universe < n + 1:
        raise WorldConstructionError("The label universe must exceed the target size")
    order = list(member_order) if member_order else ['g1', 'g2', 'complete', 'empty']
    unknown = [name for name in order if name not in EXAMPLE1_MEMBERS]
    if unknown:
        raise WorldConstructionError(f"Unknown example-1 members {unknown}")

    target = LabelSet.from_range(1, n)
    outputs = {
        'g1': LabelSet.from_ids([n]),
        'g2': LabelSet.from_ids([n + 1]),
        'complete': LabelSet.from_range(1, universe),
        'empty': LabelSet.empty(),
        'target': target,
    }
    closed = {
        'g1': (0.0, (n - 1) / n),
        'g2': (1.0, 1.0),
        'complete': ((universe - n) / universe, 0.0),
        'empty': (0.0, 1.0),
        'target': (0.0, 0.0),
    }
    params = {'n': n, 'universe_size': universe, 'member_order': order}
    name = label or f"example1-n{n}"
    return World(
        label=name,
        kind='example1',
        hypotheses=_fresh_class(outputs, order),
        input_model='fresh',
        seed=seed,
        spec=_spec('example1', params, seed, name),
        target_sampler=lambda generator: target,
        target_outcomes=[(1.0, target)],
        closed_forms={key: closed[key] for key in order},
    )


def _beta_count(beta: Union[float, Fraction, str], n: int) -> Tuple[Fraction, int]:
    exact = Fraction(beta).limit_denominator(10 ** 6)
    scaled = exact * n
    if scaled.denominator != 1 or scaled.numerator % 4 != 0:
        raise WorldConstructionError(f"beta*n = {float(scaled)} must be a multiple of 4")
    return exact, scaled.numerator


def scalar_lb_world(
    beta: Union[float, Fraction, str],
    n: int,
    seed: int = 0,
    label: Optional[str] = None,
) -> World:
    """Two-member world where no learner gets within 1.05x of the best scalar loss.

    Per input, N1 = {1..n/2}, N2 = {n/2+1..n}; g1 = N1 and g2 = N1 ∪ N2. The
    target draws 3βn/4 items from N1 and βn/4 items from N2 uniformly. The
    observed label is 3/(2n)-likely for each N1 item and 1/(2n)-likely for each
    N2 item whatever β is.
    """
    if n < 4 or n % 4 != 0:
        raise WorldConstructionError("scalar_lb_world needs n divisible by 4")
    exact_beta, k = _beta_count(beta, n)
    if not Fraction(1, 8) <= exact_beta <= Fraction(2, 3):
        raise WorldConstructionError("beta must lie in [1/8, 2/3]")
    half = n // 2
    from_n1 = 3 * k // 4
    from_n2 = k // 4
    if from_n1 > half or from_n2 > half:
        raise WorldConstructionError("Selection counts exceed the halves")

    outputs = {'g1': LabelSet.from_range(1, half), 'g2': LabelSet.from_range(1, n)}

    def sampler(generator: np.random.Generator) -> LabelSet:
        picked_n1 = generator.choice(half, size=from_n1, replace=False) + 1
        picked_n2 = generator.choice(half, size=from_n2, replace=False) + half + 1
        return LabelSet.from_ids(np.concatenate([picked_n1, picked_n2]).tolist())

    closed = {
        'g1': (1.0 - from_n1 / half, 1.0 - from_n1 / k),
        'g2': (1.0 - k / n, 0.0),
    }
    params = {'beta': float(exact_beta), 'n': n}
    name = label or f"scalar-lb-b{exact_beta.numerator}_{exact_beta.denominator}-n{n}"
    world = World(
        label=name,
        kind='scalar_lb',
        hypotheses=_fresh_class(outputs, ['g1', 'g2']),
        input_model='fresh',
        seed=seed,
        spec=_spec('scalar_lb', params, seed, name),
        target_sampler=sampler,
        closed_forms=closed,
        meta={'beta': exact_beta, 'selected': k},
    )
    return world


def _roman(which: str) -> str:
    value = str(which).upper()
    if value not in ('I', 'II'):
        raise WorldConstructionError(f"World variant must be 'I' or 'II', got {which!r}")
    return value


def pareto_lb_world(which: str, seed: int = 0, label: Optional[str] = None) -> World:
    """12-item worlds behind the Pareto-loss lower bound.

    g1 outputs items 1..8 and g2 items 5..12. In world I the target is g1's
    set w.p. 1/2 and otherwise {u1, u2} with u1 uniform in 5..8 and u2 uniform
    in 9..12; world II mirrors it with g2 and u2 uniform in 1..4.
    """
    variant = _roman(which)
    outputs = {'g1': LabelSet.from_range(1, 8), 'g2': LabelSet.from_range(5, 12)}
    if variant == 'I':
        whole, partner = outputs['g1'], range(9, 13)
    else:
        whole, partner = outputs['g2'], range(1, 5)
    outcomes: List[Tuple[float, LabelSet]] = [(0.5, whole)]
    for u1 in range(5, 9):
        for u2 in partner:
            outcomes.append((1.0 / 32.0, LabelSet.from_ids([u1, u2])))

    def sampler(generator: np.random.Generator) -> LabelSet:
        if generator.random() < 0.5:
            return whole
        return LabelSet.from_ids([int(generator.integers(5, 9)), int(partner[int(generator.integers(4))])])

    best, other = ('g1', 'g2') if variant == 'I' else ('g2', 'g1')
    closed = {best: (7.0 / 16.0, 0.25), other: (5.0 / 8.0, 0.25)}
    params = {'which': variant}
    name = label or f"pareto-lb-{variant}"
    return World(
        label=name,
        kind='pareto_lb',
        hypotheses=_fresh_class(outputs, ['g1', 'g2']),
        input_model='fresh',
        seed=seed,
        spec=_spec('pareto_lb', params, seed, name),
        target_sampler=sampler,
        target_outcomes=outcomes,
        closed_forms=closed,
    )


def semi_lb_world(which: str, n: int, seed: int = 0, label: Optional[str] = None) -> World:
    """Huge-target worlds behind the semi-realizable lower bound.

    N = {1..n}, g1 = {1}, g2 = {2}. World I: the target is N \\ {2} or {1, 2}
    with probability 1/2 each; world II swaps the roles of 1 and 2.
    """
    variant = _roman(which)
    if n < 3:
        raise WorldConstructionError("semi_lb_world needs n >= 3")
    everything = LabelSet.from_range(1, n)
    keep, drop = (1, 2) if variant == 'I' else (2, 1)
    large = everything - LabelSet.from_ids([drop])
    pair = LabelSet.from_ids([1, 2])
    outcomes = [(0.5, large), (0.5, pair)]

    def sampler(generator: np.random.Generator) -> LabelSet:
        return large if generator.random() < 0.5 else pair

    outputs = {'g1': LabelSet.from_ids([1]), 'g2': LabelSet.from_ids([2])}
    good, bad = ('g1', 'g2') if variant == 'I' else ('g2', 'g1')
    closed = {
        good: (0.0, 0.75 - 1.0 / (2.0 * (n - 1))),
        bad: (0.5, 0.75),
    }
    params = {'which': variant, 'n': n}
    name = label or f"semi-lb-{variant}-n{n}"
    return World(
        label=name,
        kind='semi_lb',
        hypotheses=_fresh_class(outputs, ['g1', 'g2']),
        input_model='fresh',
        seed=seed,
        spec=_spec('semi_lb', params, seed, name),
        target_sampler=sampler,
        target_outcomes=outcomes,
        closed_forms=closed,
        meta={'zero_precision_member': good},
    )


def _random_set(generator: np.random.Generator, universe: int, low: int, high: int) -> LabelSet:
    size = int(generator.integers(low, high + 1))
    return LabelSet.from_ids(generator.choice(universe, size=size, replace=False).tolist())


def random_finite_world(
    num_inputs: int,
    label_universe: int,
    class_size: int,
    max_set_size: int,
    realizable: bool,
    rng: RngLike = 0,
    agnostic_noise: Optional[float] = None,
    label: Optional[str] = None,
) -> World:
    """Random benchmark world over a finite categorical input set.

    Input probabilities are Dirichlet(1, ..., 1). Every set (member outputs and
    target) has a size uniform in [1, max_set_size] and is a uniform subset of
    that size of {0..label_universe-1}. A realizable world copies a uniformly
    chosen member as its target. An agnostic world draws independent random
    target sets, or, when agnostic_noise = q is given, copies a random member
    and replaces its set at each input independently with probability q.
    """
    for field_name, value in (('num_inputs', num_inputs), ('label_universe', label_universe),
                              ('class_size', class_size), ('max_set_size', max_set_size)):
        if value < 1:
            raise WorldConstructionError(f"{field_name} must be positive")
    if max_set_size > label_universe:
        raise WorldConstructionError("max_set_size cannot exceed label_universe")
    if agnostic_noise is not None and not 0.0 <= agnostic_noise <= 1.0:
        raise WorldConstructionError("agnostic_noise must lie in [0, 1]")

    seed = as_seed(rng)
    generator = as_generator(seed)
    inputs = list(range(num_inputs))
    probs = generator.dirichlet(np.ones(num_inputs))

    tables: List[Dict[int, LabelSet]] = []
    for _ in range(class_size):
        tables.append({x: _random_set(generator, label_universe, 1, max_set_size) for x in inputs})
    members = [Hypothesis.from_table(f"h{j:02d}", table) for j, table in enumerate(tables)]

    meta: Dict[str, Any] = {}
    if realizable:
        chosen = int(generator.integers(class_size))
        target_table = dict(tables[chosen])
        meta['target_member'] = members[chosen].id
    elif agnostic_noise is not None:
        base = int(generator.integers(class_size))
        target_table = {}
        for x in inputs:
            if generator.random() < agnostic_noise:
                target_table[x] = _random_set(generator, label_universe, 1, max_set_size)
            else:
                target_table[x] = tables[base][x]
        meta['base_member'] = members[base].id
    else:
        target_table = {x: _random_set(generator, label_universe, 1, max_set_size) for x in inputs}

    params = {
        'num_inputs': num_inputs,
        'label_universe': label_universe,
        'class_size': class_size,
        'max_set_size': max_set_size,
        'realizable': bool(realizable),
        'agnostic_noise': agnostic_noise,
    }
    name = label or f"random-{'realizable' if realizable else 'agnostic'}-h{class_size}"
    return World(
        label=name,
        kind='random_finite',
        hypotheses=HypothesisClass(members),
        input_model='categorical',
        seed=seed,
        spec=_spec('random_finite', params, seed, name),
        support=(inputs, probs),
        target_table=target_table,
        meta=meta,
    )


def semi_realizable_world(
    num_inputs: int,
    class_size: int,
    max_target_size: int,
    label_universe: Optional[int] = None,
    rng: RngLike = 0,
    label: Optional[str] = None,
) -> World:
    """Bounded-target world whose class holds exactly one zero-precision member.

    Targets have at most C = max_target_size labels. The zero-precision member
    outputs a non-empty subset of the target at every input; every decoy outputs
    at most C labels, at least one of them false, so its precision loss is at
    least 1/C at every input and its separation gap is at least 1/C**2.
    """
    if num_inputs < 1 or class_size < 1 or max_target_size < 1:
        raise WorldConstructionError("semi_realizable_world parameters must be positive")
    universe = label_universe if label_universe is not None else 4 * max_target_size
    if universe < 2 * max_target_size:
        raise WorldConstructionError("label_universe must be at least 2 * max_target_size")

    seed = as_seed(rng)
    generator = as_generator(seed)
    inputs = list(range(num_inputs))
    probs = generator.dirichlet(np.ones(num_inputs))
    cap = max_target_size

    targets = {x: _random_set(generator, universe, 1, cap) for x in inputs}
    good_position = int(generator.integers(class_size))
    members: List[Hypothesis] = []
    for j in range(class_size):
        table: Dict[int, LabelSet] = {}
        for x in inputs:
            target_ids = np.asarray(targets[x].to_list())
            if j == good_position:
                size = int(generator.integers(1, len(target_ids) + 1))
                table[x] = LabelSet.from_ids(generator.choice(target_ids, size=size, replace=False).tolist())
                continue
            true_count = int(generator.integers(0, min(len(target_ids), cap - 1) + 1))
            false_count = int(generator.integers(1, cap - true_count + 1))
            outside = np.setdiff1d(np.arange(universe), target_ids)
            picked = np.concatenate([
                generator.choice(target_ids, size=true_count, replace=False),
                generator.choice(outside, size=false_count, replace=False),
            ])
            table[x] = LabelSet.from_ids(picked.tolist())
        members.append(Hypothesis.from_table(f"h{j:02d}", table))

    params = {
        'num_inputs': num_inputs,
        'class_size': class_size,
        'max_target_size': max_target_size,
        'label_universe': universe,
    }
    name = label or f"semi-realizable-C{cap}-h{class_size}"
    return World(
        label=name,
        kind='semi_realizable',
        hypotheses=HypothesisClass(members),
        input_model='categorical',
        seed=seed,
        spec=_spec('semi_realizable', params, seed, name),
        support=(inputs, probs),
        target_table=targets,
        meta={'zero_precision_member': members[good_position].id},
    )


# Observed-label marginals

Marginal = List[Tuple[LabelSet, float]]


def _breakpoints(sets: Sequence[LabelSet]) -> List[int]:
    points = set()
    for labels in sets:
        for lo, hi in labels.intervals:
            points.add(lo)
            points.add(hi + 1)
    return sorted(points)


def observed_label_marginal(world: World) -> Marginal:
    """Exact law of the observed label v as (atom, per-label probability) pairs.

    Atoms are maximal ranges on which the per-label probability is constant;
    labels outside every atom have probability 0.
    """
    cases = world.enumerate_cases()
    if cases is None:
        raise WorldConstructionError(f"World {world.label!r} has no enumerable target law")
    targets = [target for _, _, target in cases]
    points = _breakpoints(targets)
    atoms: Marginal = []
    for lo, nxt in zip(points, points[1:]):
        mass = sum(weight / target.size() for weight, _, target in cases if lo in target)
        if mass <= 0.0:
            continue
        if atoms and atoms[-1][0].intervals[-1][1] == lo - 1 and math.isclose(atoms[-1][1], mass, rel_tol=0, abs_tol=1e-15):
            atoms[-1] = (LabelSet.from_range(atoms[-1][0].intervals[0][0], nxt - 1), atoms[-1][1])
        else:
            atoms.append((LabelSet.from_range(lo, nxt - 1), mass))
    return atoms


def _per_label(marginal: Marginal, label: int) -> float:
    for atom, mass in marginal:
        if label in atom:
            return mass
    return 0.0


def marginal_total_variation(first: Marginal, second: Marginal) -> float:
    """Total variation distance between two observed-label laws."""
    points = _breakpoints([atom for atom, _ in first] + [atom for atom, _ in second])
    distance = 0.0
    for lo, nxt in zip(points, points[1:]):
        distance += abs(_per_label(first, lo) - _per_label(second, lo)) * (nxt - lo)
    return distance / 2.0


# JSON specs

WORLD_BUILDERS: Dict[str, Callable[..., World]] = {
    'example1': example1_world,
    'scalar_lb': scalar_lb_world,
    'pareto_lb': pareto_lb_world,
    'semi_lb': semi_lb_world,
    'random_finite': random_finite_world,
    'semi_realizable': semi_realizable_world,
}

WORLD_CATALOGUE: List[WorldKindInfo] = [
    {'kind': 'example1', 'input_model': 'fresh',
     'params': {'n': 'int >= 2', 'universe_size': 'int > n (default 10n)',
                'member_order': 'subset of g1, g2, complete, empty, target'},
     'description': 'Large target set; ERM picks the complete function'},
    {'kind': 'scalar_lb', 'input_model': 'fresh',
     'params': {'beta': 'real in [1/8, 2/3]', 'n': 'int, n and beta*n divisible by 4'},
     'description': 'Two-member world where no learner gets within a factor 1.05 of the best scalar loss'},
    {'kind': 'pareto_lb', 'input_model': 'fresh',
     'params': {'which': 'I | II'},
     'description': '12-item worlds behind the Pareto lower bound'},
    {'kind': 'semi_lb', 'input_model': 'fresh',
     'params': {'which': 'I | II', 'n': 'int >= 3'},
     'description': 'Huge targets; zero precision is not learnable'},
    {'kind': 'random_finite', 'input_model': 'categorical',
     'params': {'num_inputs': 'int', 'label_universe': 'int', 'class_size': 'int',
                'max_set_size': 'int <= label_universe', 'realizable': 'bool',
                'agnostic_noise': 'real in [0, 1] or null'},
     'description': 'Random benchmark world for sample-complexity sweeps'},
    {'kind': 'semi_realizable', 'input_model': 'categorical',
     'params': {'num_inputs': 'int', 'class_size': 'int', 'max_target_size': 'int C',
                'label_universe': 'int >= 2C (default 4C)'},
     'description': 'Bounded targets with one zero-precision member'},
]


def list_world_kinds() -> List[WorldKindInfo]:
    return [dict(entry) for entry in WORLD_CATALOGUE]  # type: ignore[misc]


def world_from_spec(spec: WorldSpec, seed_override: Optional[int] = None) -> World:
    """Build a world from its JSON spec.

    Args:
        spec: Spec with 'kind', 'params' and optionally 'seed' and 'label'
        seed_override: Seed to use instead of spec['seed'] (per-trial rebuilds)
    """
    kind = spec.get('kind')
    builder = WORLD_BUILDERS.get(kind)  # type: ignore[arg-type]
    if builder is None:
        raise WorldConstructionError(f"Unknown world kind {kind!r}")
    version = spec.get('schema_version', SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise WorldConstructionError(f"Unsupported world spec schema version {version}")
    params = dict(spec.get('params', {}))
    seed = int(seed_override if seed_override is not None else spec.get('seed', 0))
    if kind in ('random_finite', 'semi_realizable'):
        params['rng'] = seed
    else:
        params['seed'] = seed
    if spec.get('label'):
        params['label'] = spec['label']
    try:
        return builder(**params)
    except TypeError as e:
        raise WorldConstructionError(f"Bad parameters for world kind {kind!r}: {e}") from e


def world_to_spec(world: World) -> WorldSpec:
    return dict(world.spec)  # type: ignore[return-value]


def world_snapshot(world: World) -> Dict[str, Any]:
    """Serializable dump of a finite world (spec, support, member tables and target)."""
    snapshot: Dict[str, Any] = {'spec': world_to_spec(world), 'members': {}}
    cases = world.enumerate_cases() if world.input_model == 'categorical' else None
    if cases is None:
        snapshot['closed_forms'] = {k: list(v) for k, v in world.closed_forms.items()}
        return snapshot
    snapshot['support'] = [[x, p] for x, p in world.support or []]
    snapshot['target'] = {str(x): target.to_json() for _, x, target in cases}
    for member in world.hypotheses:
        snapshot['members'][member.id] = {str(x): member.eval(x).to_json() for _, x, _ in cases}
    return snapshot
