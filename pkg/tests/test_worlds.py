"""Unit tests for world constructions and sampling."""

from fractions import Fraction

import numpy as np
import pytest

from models.errors import ModelViolationError, WorldConstructionError
from models.label_set import LabelSet
from services.losses import exact_losses, set_losses
from services.worlds import (
    FRESH_BLOCK_BITS,
    TrainingSet,
    example1_world,
    list_world_kinds,
    marginal_total_variation,
    observed_label_marginal,
    pareto_lb_world,
    random_finite_world,
    sample_training_set,
    scalar_lb_world,
    semi_lb_world,
    semi_realizable_world,
    world_from_spec,
    world_snapshot,
    world_to_spec,
)
from utils.rng import SeedStream, as_generator, as_seed


class TestExample1World:
    """Large-target world."""

    def test_defaults(self):
        world = example1_world(n=5)

        assert world.hypotheses.ids == ('g1', 'g2', 'complete', 'empty')
        assert world.hypotheses['complete'].eval(123) == LabelSet.from_range(1, 50)
        assert world.target(7) == LabelSet.from_range(1, 5)
        assert world.closed_form('g1') == (0.0, pytest.approx(0.8))

    def test_member_order_controls_class(self):
        world = example1_world(n=5, member_order=['target', 'g2'])

        assert world.hypotheses.ids == ('target', 'g2')
        assert world.closed_form('g1') is None

    @pytest.mark.slow
    def test_observed_labels_are_uniform_on_the_target(self):
        """Each label of {1..n} is observed with frequency 1/n."""
        n, draws = 10, 100_000
        data = sample_training_set(example1_world(n=n), draws, rng=11)

        counts = np.bincount(np.asarray(data.vs), minlength=n + 2)
        p = 1 / n
        sigma = np.sqrt(p * (1 - p) / draws)
        assert counts[0] == 0
        assert counts[n + 1:].sum() == 0
        assert np.all(np.abs(counts[1:n + 1] / draws - p) < 4 * sigma)

    @pytest.mark.parametrize('kwargs', [
        {'n': 1},
        {'n': 5, 'universe_size': 5},
        {'n': 5, 'member_order': ['g1', 'oracle']},
    ])
    def test_invalid_parameters(self, kwargs):
        with pytest.raises(WorldConstructionError):
            example1_world(**kwargs)


class TestScalarLowerBoundWorld:
    """Two-member world for the scalar lower bound."""

    def test_targets_split_between_halves(self):
        """3/4 of the βn selected items come from the first half."""
        world = scalar_lb_world(0.125, 32)
        for x in world.sample_inputs(20, 1):
            target = world.target(x)
            assert target.size() == 4
            assert target.intersection_size(LabelSet.from_range(1, 16)) == 3

    def test_closed_forms(self):
        world = scalar_lb_world(Fraction(1, 8), 32)

        assert world.closed_form('g1') == (pytest.approx(13 / 16), pytest.approx(0.25))
        assert world.closed_form('g2') == (pytest.approx(7 / 8), 0.0)
        assert world.meta['selected'] == 4

    @pytest.mark.parametrize('beta', [Fraction(1, 8), Fraction(1, 2), Fraction(2, 3)])
    def test_first_half_share_ignores_beta(self, beta):
        """Every target keeps exactly 3/4 of its items in N1."""
        n = 96
        world = scalar_lb_world(beta, n)
        first_half = LabelSet.from_range(1, n // 2)

        for x in world.sample_inputs(50, 3):
            target = world.target(x)
            assert Fraction(target.intersection_size(first_half), target.size()) == Fraction(3, 4)

    @pytest.mark.slow
    @pytest.mark.parametrize('beta', [Fraction(1, 8), Fraction(2, 3)])
    def test_label_frequencies_ignore_beta(self, beta):
        """N1 items are observed w.p. 3/(2n) each and N2 items w.p. 1/(2n)."""
        n, draws = 96, 50_000
        data = sample_training_set(scalar_lb_world(beta, n), draws, rng=4)

        frequencies = np.bincount(np.asarray(data.vs), minlength=n + 1)[1:] / draws
        expected = np.concatenate([np.full(n // 2, 3 / (2 * n)), np.full(n // 2, 1 / (2 * n))])
        sigma = np.sqrt(expected * (1 - expected) / draws)
        assert np.all(np.abs(frequencies - expected) < 4.5 * sigma)

    @pytest.mark.parametrize('beta,n', [(0.125, 30), (0.125, 36), (0.9, 32), (0.1, 40)])
    def test_invalid_parameters(self, beta, n):
        with pytest.raises(WorldConstructionError):
            scalar_lb_world(beta, n)


class TestLowerBoundWorlds:
    """Pareto and semi-realizable lower-bound pairs."""

    def test_pareto_world_one_losses(self):
        world = pareto_lb_world('I')

        assert world.closed_form('g1') == (7 / 16, 0.25)
        assert world.closed_form('g2') == (5 / 8, 0.25)
        assert sum(weight for weight, _, _ in world.enumerate_cases()) == pytest.approx(1.0)

    def test_pareto_worlds_mirror(self):
        """World II swaps the roles of the two members."""
        assert pareto_lb_world('II').closed_form('g2') == pareto_lb_world('I').closed_form('g1')
        with pytest.raises(WorldConstructionError):
            pareto_lb_world('III')

    def test_pareto_worlds_share_observed_labels(self):
        """Both worlds induce the same law of v, so data cannot tell them apart."""
        first = observed_label_marginal(pareto_lb_world('I'))
        second = observed_label_marginal(pareto_lb_world('II'))
        expected = [(LabelSet.from_range(1, 4), 1 / 16), (LabelSet.from_range(5, 8), 1 / 8),
                    (LabelSet.from_range(9, 12), 1 / 16)]

        assert marginal_total_variation(first, second) <= 1e-12
        for marginal in (first, second):
            assert [atom for atom, _ in marginal] == [atom for atom, _ in expected]
            assert [mass for _, mass in marginal] == pytest.approx([mass for _, mass in expected], abs=1e-12)

    def test_semi_lb_marginals_nearly_agree(self):
        """Observed labels are 1/(2(n-1)) apart in total variation."""
        n = 50
        first = observed_label_marginal(semi_lb_world('I', n))
        second = observed_label_marginal(semi_lb_world('II', n))

        assert marginal_total_variation(first, second) == pytest.approx(1 / (2 * (n - 1)))
        assert marginal_total_variation(first, first) == 0.0
        assert sum(mass * atom.size() for atom, mass in first) == pytest.approx(1.0)

    def test_semi_lb_zero_precision_member(self):
        world = semi_lb_world('II', 10)

        assert world.meta['zero_precision_member'] == 'g2'
        assert exact_losses(world.hypotheses['g2'], world)['precision_loss'] == 0.0
        assert exact_losses(world.hypotheses['g1'], world)['precision_loss'] == 0.5

    def test_marginal_needs_enumerable_law(self):
        with pytest.raises(WorldConstructionError):
            observed_label_marginal(scalar_lb_world(0.125, 32))


class TestRandomWorlds:
    """Finite categorical worlds."""

    def test_realizable_target_is_a_member(self):
        world = random_finite_world(8, 30, 6, 5, realizable=True, rng=12)
        member = world.hypotheses[world.meta['target_member']]

        for x, probability in world.support:
            assert world.target(x) == member.eval(x)
            assert 1 <= member.eval(x).size() <= 5
        assert sum(p for _, p in world.support) == pytest.approx(1.0)

    def test_zero_noise_copies_base_member(self):
        world = random_finite_world(5, 20, 4, 3, realizable=False, rng=1, agnostic_noise=0.0)
        base = world.hypotheses[world.meta['base_member']]

        assert exact_losses(base, world)['scalar_loss'] == 0.0

    def test_same_seed_same_world(self):
        first = random_finite_world(5, 20, 4, 3, realizable=False, rng=7)
        second = random_finite_world(5, 20, 4, 3, realizable=False, rng=7)

        assert world_snapshot(first) == world_snapshot(second)

    def test_invalid_parameters(self):
        with pytest.raises(WorldConstructionError):
            random_finite_world(5, 3, 4, 4, realizable=True)
        with pytest.raises(WorldConstructionError):
            random_finite_world(0, 10, 4, 3, realizable=True)
        with pytest.raises(WorldConstructionError):
            random_finite_world(5, 10, 4, 3, realizable=False, agnostic_noise=1.5)

    def test_target_outside_support(self):
        world = random_finite_world(3, 10, 2, 3, realizable=True, rng=0)

        with pytest.raises(ModelViolationError):
            world.target(99)

    def test_semi_realizable_world(self):
        """Targets are bounded, one member never over-outputs and decoys always do."""
        cap = 4
        world = semi_realizable_world(num_inputs=10, class_size=6, max_target_size=cap, rng=5)
        good = world.meta['zero_precision_member']

        for _, x, target in world.enumerate_cases():
            assert 1 <= target.size() <= cap
            for member in world.hypotheses:
                precision, _ = set_losses(member.eval(x), target)
                if member.id == good:
                    assert precision == 0.0
                else:
                    assert precision >= 1 / cap
                    assert member.eval(x).size() <= cap

    def test_semi_realizable_universe_too_small(self):
        with pytest.raises(WorldConstructionError):
            semi_realizable_world(num_inputs=3, class_size=2, max_target_size=4, label_universe=6)


class TestSampling:
    """Input streams and training sets."""

    def test_fresh_inputs_never_repeat(self):
        world = example1_world(n=4)
        xs = world.sample_inputs(1000, 3)

        assert len(set(xs)) == 1000
        assert xs == world.sample_inputs(1000, 3)

    def test_fresh_targets_are_memoized_and_reproducible(self):
        world = pareto_lb_world('I', seed=2)
        xs = world.sample_inputs(50, 0)
        first = [world.target(x) for x in xs]

        world.forget_targets()

        assert [world.target(x) for x in xs] == first
        assert world.target(xs[0]) is world.target(xs[0])

    def test_fresh_streams_do_not_collide(self):
        """Separate draw calls get separate 63-bit tags."""
        world = example1_world(n=4)
        ids = [x for seed in range(200) for x in world.sample_inputs(10, seed)]

        assert len(set(ids)) == 2000
        assert len({x >> FRESH_BLOCK_BITS for x in ids}) == 200
        assert max(ids) >= 2 ** 63

    def test_fresh_target_memo_is_bounded(self):
        world = scalar_lb_world(0.125, 32, seed=6)
        world.memo_limit = 5
        xs = world.sample_inputs(20, 2)

        first = [world.target(x) for x in xs]

        assert world.memoized_targets() <= 5
        assert [world.target(x) for x in xs] == first
        assert [scalar_lb_world(0.125, 32, seed=6).target(x) for x in xs] == first

    def test_training_labels_come_from_targets(self):
        world = random_finite_world(6, 25, 3, 4, realizable=False, rng=8)
        data = sample_training_set(world, 200, rng=9)

        assert data.m == len(data) == 200
        for x, v in data.samples:
            assert v in world.target(x)
        assert sample_training_set(world, 200, rng=9) == data

    def test_training_set_validation(self):
        world = example1_world(n=4)
        with pytest.raises(ValueError):
            sample_training_set(world, 0, rng=0)
        with pytest.raises(ValueError):
            TrainingSet(xs=(1, 2), vs=(1,))


class TestWorldSpecs:
    """JSON specs rebuild worlds."""

    def test_catalogue(self):
        kinds = {entry['kind'] for entry in list_world_kinds()}

        assert kinds == {'example1', 'scalar_lb', 'pareto_lb', 'semi_lb', 'random_finite', 'semi_realizable'}

    def test_round_trip_fresh_world(self):
        world = scalar_lb_world(0.125, 32, seed=4)

        rebuilt = world_from_spec(world_to_spec(world))

        assert rebuilt.label == world.label
        assert rebuilt.closed_forms == world.closed_forms
        xs = world.sample_inputs(5, 1)
        assert [rebuilt.target(x) for x in xs] == [world.target(x) for x in xs]

    def test_round_trip_finite_world(self):
        world = semi_realizable_world(num_inputs=5, class_size=3, max_target_size=3, rng=21)

        rebuilt = world_from_spec(world_to_spec(world))

        assert world_snapshot(rebuilt) == world_snapshot(world)

    def test_generator_seeded_world_round_trips(self):
        """A generator argument records a seed drawn from it, not 0."""
        world = random_finite_world(5, 20, 4, 3, realizable=False, rng=np.random.default_rng(5))

        rebuilt = world_from_spec(world_to_spec(world))

        assert world.seed == world_to_spec(world)['seed'] == as_seed(np.random.default_rng(5))
        assert world_snapshot(rebuilt) == world_snapshot(world)

    def test_stream_seeded_world_round_trips(self):
        stream = SeedStream(9, (3,))
        world = semi_realizable_world(num_inputs=5, class_size=3, max_target_size=3, rng=stream)

        assert world.seed == stream.derive_seed()
        assert world_snapshot(world_from_spec(world_to_spec(world))) == world_snapshot(world)

    def test_seed_override(self):
        spec = {'kind': 'random_finite', 'seed': 1, 'params': {
            'num_inputs': 4, 'label_universe': 16, 'class_size': 3, 'max_set_size': 3, 'realizable': True,
        }}

        base = world_from_spec(spec)
        other = world_from_spec(spec, seed_override=2)

        assert world_snapshot(base) != world_snapshot(other)
        assert other.seed == 2

    @pytest.mark.parametrize('spec', [
        {'kind': 'nowhere', 'params': {}},
        {'kind': 'example1', 'params': {'n': 4, 'colour': 'red'}},
        {'kind': 'example1', 'params': {'n': 4}, 'schema_version': 99},
    ])
    def test_bad_specs(self, spec):
        with pytest.raises(WorldConstructionError):
            world_from_spec(spec)


class TestSeeds:
    """Recordable seeds."""

    def test_as_seed(self):
        assert as_seed(7) == 7
        assert as_seed(None) == 0
        assert as_seed(SeedStream(3, (1, 2))) == SeedStream(3, (1, 2)).derive_seed()
        assert as_seed(np.random.default_rng(1)) == as_seed(np.random.default_rng(1))
        assert 0 <= as_seed(np.random.default_rng(1)) < 2 ** 63

    def test_recorded_seed_rebuilds_the_generator(self):
        seed = as_seed(np.random.default_rng(8))

        assert as_generator(seed).random() == as_generator(seed).random()

    def test_negative_seed_rejected(self):
        with pytest.raises(ValueError):
            as_seed(-1)
