"""Unit tests for loss evaluation and Pareto frontiers."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from models.errors import ModelViolationError, NoClosedFormError
from models.hypothesis import Hypothesis
from models.label_set import LabelSet
from services.losses import (
    best_available_losses,
    dominates,
    empirical_losses,
    exact_losses,
    expected_losses,
    make_report,
    monte_carlo_losses,
    pareto_filter,
    pareto_frontier,
    precision_loss_at,
    recall_loss_at,
    scalar_payoff,
    semi_realizable_gap,
    set_losses,
    set_precision_loss,
    set_recall_loss,
)
from services.worlds import (
    example1_world,
    pareto_lb_world,
    random_finite_world,
    scalar_lb_world,
    semi_lb_world,
    semi_realizable_world,
)


def _const(name, labels):
    return Hypothesis.from_rule(name, lambda x: labels)


class TestSetLosses:
    """Per-input losses on label sets."""

    def test_disjoint_and_equal(self):
        """Disjoint sets lose everything; equal sets lose nothing."""
        a = LabelSet.from_range(1, 4)
        b = LabelSet.from_range(5, 8)

        assert set_losses(a, b) == (1.0, 1.0)
        assert set_losses(a, a) == (0.0, 0.0)

    def test_partial_overlap(self):
        """Precision divides by the output size, recall by the target size."""
        output = LabelSet.from_range(1, 4)
        target = LabelSet.from_range(3, 10)

        assert set_precision_loss(output, target) == 0.5
        assert set_recall_loss(output, target) == 6 / 8

    def test_empty_output_has_zero_precision_loss(self):
        """Outputting nothing is never wrong, and misses everything."""
        target = LabelSet.from_ids([1, 2])

        assert set_losses(LabelSet.empty(), target) == (0.0, 1.0)

    def test_empty_target_rejected(self):
        """Targets are never empty."""
        with pytest.raises(ModelViolationError):
            set_losses(LabelSet.from_ids([1]), LabelSet.empty())
        with pytest.raises(ModelViolationError):
            set_recall_loss(LabelSet.from_ids([1]), LabelSet.empty())

    @settings(max_examples=200, deadline=None)
    @given(
        a=st.sets(st.integers(0, 40), max_size=20),
        b=st.sets(st.integers(0, 40), min_size=1, max_size=20),
    )
    def test_losses_in_unit_interval(self, a, b):
        """Both losses lie in [0, 1] and match the naive formulas."""
        precision, recall = set_losses(LabelSet.from_ids(a), LabelSet.from_ids(b))

        assert 0.0 <= precision <= 1.0
        assert 0.0 <= recall <= 1.0
        assert math.isclose(precision, len(a - b) / len(a) if a else 0.0)
        assert math.isclose(recall, len(b - a) / len(b))

    def test_per_input_helpers(self):
        """precision_loss_at and recall_loss_at evaluate both hypotheses at x."""
        g = Hypothesis.from_table('g', {0: LabelSet.from_ids([1, 2]), 1: LabelSet.from_ids([9])})
        target = Hypothesis.from_table('t', {0: LabelSet.from_ids([1]), 1: LabelSet.from_ids([9, 10])})

        assert precision_loss_at(g, target, 0) == 0.5
        assert recall_loss_at(g, target, 1) == 0.5
        with pytest.raises(ModelViolationError):
            recall_loss_at(g, target, 5)


class TestReports:
    """LossReport plumbing."""

    def test_scalar_is_mean(self):
        report = make_report(0.2, 0.6, 'closed_form')

        assert report['scalar_loss'] == pytest.approx(0.4)
        assert scalar_payoff(report) == pytest.approx(0.6)
        assert report['trials'] is None

    def test_empirical_losses(self):
        """Means over the inputs, counting repeats."""
        g = Hypothesis.from_table('g', {0: LabelSet.from_ids([1]), 1: LabelSet.from_ids([5])})
        target = Hypothesis.from_table('t', {0: LabelSet.from_ids([1, 2]), 1: LabelSet.from_ids([6])})

        report = empirical_losses(g, target, [0, 0, 1])

        assert report['method'] == 'empirical'
        assert report['precision_loss'] == pytest.approx(1 / 3)
        assert report['recall_loss'] == pytest.approx((0.5 + 0.5 + 1.0) / 3)

    def test_empirical_losses_need_inputs(self):
        g = _const('g', LabelSet.from_ids([1]))
        with pytest.raises(ValueError):
            empirical_losses(g, g, [])


class TestExpectedLosses:
    """Closed forms, enumeration and Monte-Carlo."""

    def test_example1_closed_forms(self):
        """The complete function over-outputs by (|Y| - n)/|Y|."""
        world = example1_world(n=10, universe_size=100)

        complete = exact_losses(world.hypotheses['complete'], world)
        g1 = exact_losses(world.hypotheses['g1'], world)

        assert complete['method'] == 'closed_form'
        assert complete['precision_loss'] == pytest.approx(0.9)
        assert complete['recall_loss'] == 0.0
        assert g1['precision_loss'] == 0.0
        assert g1['recall_loss'] == pytest.approx(0.9)

    def test_closed_forms_agree_with_enumeration(self):
        """Enumerating the target law reproduces every listed closed form."""
        for world in (example1_world(n=6), pareto_lb_world('I'), pareto_lb_world('II'), semi_lb_world('I', n=50)):
            for member in world.hypotheses:
                closed = world.closed_form(member.id)
                cases = world.enumerate_cases()
                precision = sum(w * set_losses(member.eval(x), t)[0] for w, x, t in cases)
                recall = sum(w * set_losses(member.eval(x), t)[1] for w, x, t in cases)
                assert closed[0] == pytest.approx(precision, abs=1e-12), (world.label, member.id)
                assert closed[1] == pytest.approx(recall, abs=1e-12), (world.label, member.id)

    def test_enumeration_on_categorical_world(self):
        """Finite worlds enumerate their support."""
        world = random_finite_world(5, 12, 3, 4, realizable=True, rng=3)
        target_id = world.meta['target_member']

        report = exact_losses(world.hypotheses[target_id], world)

        assert report['method'] == 'enumeration'
        assert report['precision_loss'] == 0.0
        assert report['recall_loss'] == 0.0

    def test_no_closed_form(self):
        """A fresh world without an enumerable law refuses exact evaluation."""
        world = scalar_lb_world(0.125, 32)
        other = _const('other', LabelSet.from_range(1, 4))

        with pytest.raises(NoClosedFormError):
            exact_losses(other, world)
        with pytest.raises(NoClosedFormError):
            expected_losses(other, world, mode='exact')

    def test_monte_carlo_within_four_standard_errors(self):
        """Monte-Carlo agrees with the enumerated expectation."""
        world = pareto_lb_world('I')
        g1 = world.hypotheses['g1']
        exact = exact_losses(g1, world)

        estimate = monte_carlo_losses(g1, world, 4000, rng=11)

        assert estimate['method'] == 'monte_carlo'
        assert estimate['trials'] == 4000
        assert abs(estimate['precision_loss'] - exact['precision_loss']) <= 4 * estimate['precision_se'] + 1e-12
        assert abs(estimate['recall_loss'] - exact['recall_loss']) <= 4 * estimate['recall_se'] + 1e-12

    def test_monte_carlo_is_deterministic(self):
        """The same seed gives the same estimate."""
        world = semi_lb_world('I', n=20)
        g = world.hypotheses['g2']

        first = monte_carlo_losses(g, world, 500, rng=5)
        second = monte_carlo_losses(g, world, 500, rng=5)

        assert first == second

    def test_best_available_falls_back_to_monte_carlo(self):
        """Without an exact path the estimate is Monte-Carlo."""
        world = scalar_lb_world(0.125, 32)
        other = _const('other', LabelSet.from_range(1, 16))

        report = best_available_losses(other, world, 300, rng=1)

        assert report['method'] == 'monte_carlo'
        assert best_available_losses(world.hypotheses['g2'], world, 300)['method'] == 'closed_form'

    def test_unknown_mode(self):
        world = example1_world(n=4)
        with pytest.raises(ValueError):
            expected_losses(world.hypotheses['g1'], world, mode='guess')  # type: ignore[arg-type]


class TestPareto:
    """Dominance and frontiers."""

    def _point(self, name, p, r):
        return {'hypothesis_id': name, 'precision_loss': p, 'recall_loss': r}

    def test_dominates(self):
        assert dominates((0.1, 0.2), (0.1, 0.3))
        assert not dominates((0.1, 0.2), (0.1, 0.2))
        assert not dominates((0.1, 0.4), (0.2, 0.3))

    def test_filter_keeps_ties(self):
        """Identical non-dominated points are all kept."""
        points = [
            self._point('a', 0.1, 0.5),
            self._point('b', 0.3, 0.2),
            self._point('c', 0.4, 0.4),
            self._point('d', 0.1, 0.5),
        ]

        kept = [p['hypothesis_id'] for p in pareto_filter(points)]

        assert kept == ['a', 'b', 'd']

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.tuples(st.integers(0, 6), st.integers(0, 6)), min_size=1, max_size=8))
    def test_filter_matches_brute_force(self, pairs):
        """The sweep equals the quadratic dominance filter."""
        points = [self._point(f"h{i}", p / 6, r / 6) for i, (p, r) in enumerate(pairs)]
        naive = [
            p for p in points
            if not any(dominates((q['precision_loss'], q['recall_loss']), (p['precision_loss'], p['recall_loss']))
                       for q in points)
        ]

        assert pareto_filter(points) == naive

    def test_example1_frontier(self):
        """g2 is dominated by every other member."""
        world = example1_world(n=10)

        frontier = {p['hypothesis_id'] for p in pareto_frontier(world.hypotheses, world)}

        assert frontier == {'g1', 'complete'}

    def test_pareto_world_frontier(self):
        """In world I, g1 dominates g2."""
        world = pareto_lb_world('I')

        frontier = pareto_frontier(world.hypotheses, world)

        assert [p['hypothesis_id'] for p in frontier] == ['g1']
        assert Fraction(frontier[0]['precision_loss']) == Fraction(7, 16)
        assert Fraction(frontier[0]['recall_loss']) == Fraction(1, 4)


class TestSemiRealizableGap:
    """Δ_D over finite worlds."""

    def test_bounded_target_world_gap(self):
        """Decoys with a false label among at most C outputs give Δ_D >= 1/C^2."""
        world = semi_realizable_world(num_inputs=8, class_size=6, max_target_size=4, rng=2)

        gap = semi_realizable_gap(world)

        assert gap >= 1 / 16 - 1e-12

    def test_realizable_world_has_no_gap(self):
        """A class whose only member is the target has no positive-precision member."""
        world = random_finite_world(1, 4, 1, 2, realizable=True, rng=0)

        assert semi_realizable_gap(world) == math.inf

    def test_requires_enumerable_world(self):
        with pytest.raises(NoClosedFormError):
            semi_realizable_gap(scalar_lb_world(0.125, 32))
