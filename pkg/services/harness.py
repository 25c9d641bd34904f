"""Experiment harness: seeded trial batteries, result aggregation and emission.

Randomness layout: one root seed, split by SeedStream into per-(world, m,
trial) streams with a purpose key in front, so adding trials or m values
never perturbs existing ones and worker scheduling never changes a value.
"""

from __future__ import annotations

import csv
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from scipy.stats import binomtest

from models.errors import ConfigError, LearnerError, SetLearnError
from models.hypothesis import HypothesisClass
from models.types import (
    ExperimentConfig,
    LearnerOutput,
    LearnerSpec,
    LossReport,
    SummaryRow,
    TrialRecord,
    VerificationReport,
    WorldSpec,
)
from services.learners import erm_consistent, ml_realizable, modified_ml, semi_realizable_learner
from services.losses import best_available_losses, empirical_losses
from services.oracle import OracleService, Verifier
from services.surrogate import surrogate_agnostic, surrogate_realizable
from services.worlds import (
    FRESH_MEMO_LIMIT,
    WORLD_BUILDERS,
    TrainingSet,
    World,
    sample_training_set,
    world_from_spec,
)
from utils.rng import PURPOSE_EVALUATION, PURPOSE_TRAINING, PURPOSE_WORLD, SeedStream
from utils.validators import (
    validate_enum_field,
    validate_positive_int,
    validate_real_range,
    validate_schedule,
    validate_seed,
    validate_string_field,
)

logger = logging.getLogger(__name__)

SCHEMA_VERSION = 1
CSV_COLUMNS = (
    'experiment', 'learner', 'm', 'trial',
    'precision_loss', 'recall_loss', 'scalar_loss',
    'chosen_id', 'seed', 'error',
)
CLASS_MIN = 'class_min'

# (name, low, high, closed at both ends)
PARAM_RANGES = (
    ('slack', 0.0, 1e6, True),
    ('delta', 0.0, 1.0, False),
    ('tol', 0.0, 1e6, True),
    ('epsilon', 0.0, 1e6, False),
)


# Learner registry

LearnerFn = Callable[[HypothesisClass, TrainingSet, Dict[str, Any]], LearnerOutput]

LEARNER_REGISTRY: Dict[str, LearnerFn] = {
    'erm_consistent': lambda h, data, p: erm_consistent(h, data),
    'ml_realizable': lambda h, data, p: ml_realizable(h, data),
    'modified_ml': lambda h, data, p: modified_ml(h, data, p['r'], p.get('slack'), p['delta']),
    'semi_realizable': lambda h, data, p: semi_realizable_learner(h, data, p['tol']),
    'surrogate_realizable': lambda h, data, p: surrogate_realizable(h, data, p['epsilon']),
    'surrogate_agnostic': lambda h, data, p: surrogate_agnostic(h, data),
}

LEARNER_PARAMS: Dict[str, Tuple[str, ...]] = {
    'erm_consistent': (),
    'ml_realizable': (),
    'modified_ml': ('r', 'slack', 'delta'),
    'semi_realizable': ('tol',),
    'surrogate_realizable': ('epsilon',),
    'surrogate_agnostic': (),
}


def _validate_learner(entry: Any, index: int) -> Tuple[Optional[LearnerSpec], List[str]]:
    where = f"learners[{index}]"
    if isinstance(entry, str):
        entry = {'name': entry}
    if not isinstance(entry, dict):
        return None, [f"{where} must be a name or an object"]
    name, error = validate_enum_field(entry.get('name'), f"{where}.name", list(LEARNER_REGISTRY), case_sensitive=True)
    if error:
        return None, [error]
    params = entry.get('params', {}) or {}
    if not isinstance(params, dict):
        return None, [f"{where}.params must be an object"]
    errors: List[str] = []
    unknown = sorted(set(params) - set(LEARNER_PARAMS[name]))  # type: ignore[index]
    if unknown:
        errors.append(f"{where}: unknown parameters {unknown}")
    checked: Dict[str, Any] = {}
    if 'r' in params:
        if params['r'] == CLASS_MIN:
            checked['r'] = CLASS_MIN
        else:
            checked['r'], error = validate_real_range(params['r'], None, 0.0, 1.0, f"{where}.r")
            errors.extend([error] if error else [])
    elif name == 'modified_ml':
        errors.append(f"{where}: modified_ml needs r (a number or '{CLASS_MIN}')")
    for key, low, high, inclusive in PARAM_RANGES:
        if key in params:
            checked[key], error = validate_real_range(
                params[key], None, low, high, f"{where}.{key}", low_inclusive=inclusive, high_inclusive=inclusive)
            errors.extend([error] if error else [])
    return {'name': name, 'params': checked}, errors  # type: ignore[typeddict-item]


class ExperimentService:
    """Service for running experiment configs and the verifier suite."""

    def __init__(
        self,
        config: Dict[str, Any],
        learner_config: Optional[Dict[str, Any]] = None,
        world_config: Optional[Dict[str, Any]] = None,
        oracle_config: Optional[Dict[str, Any]] = None,
        default_seed: int = 0,
    ):
        """Initialize the experiment service.

        Args:
            config: Configuration dictionary with the harness section
            learner_config: Learner defaults (delta, semi_realizable_tol, surrogate_epsilon)
            world_config: World defaults (example1_universe_multiplier, max_class_size, fresh_memo_limit)
            oracle_config: Verifier parameters for verify_all
            default_seed: Root seed when a config gives none
        """
        self.config = config
        self.workers = max(1, int(config.get('workers', 4)))
        self.mc_inputs = int(config.get('mc_inputs', 100000))
        self.float_format = config.get('float_format', '.12g')
        self.success_epsilon = config.get('success_epsilon', 0.1)
        learner_config = learner_config or {}
        self.learner_defaults = {
            'delta': learner_config.get('delta', 0.1),
            'tol': learner_config.get('semi_realizable_tol', 0.0),
            'epsilon': learner_config.get('surrogate_epsilon', 0.1),
        }
        world_config = world_config or {}
        self.universe_multiplier = world_config.get('example1_universe_multiplier', 10)
        self.max_class_size = world_config.get('max_class_size', 64)
        self.fresh_memo_limit = int(world_config.get('fresh_memo_limit', FRESH_MEMO_LIMIT))
        self.oracle = OracleService(oracle_config or {})
        self.default_seed = default_seed

    # Config loading

    def load_experiment_config(self, path: str) -> ExperimentConfig:
        """Read and validate a JSON experiment config.

        Raises:
            ConfigError: listing every problem found
        """
        try:
            with open(path, 'r', encoding='utf-8') as f:
                raw = json.load(f)
        except FileNotFoundError as e:
            raise ConfigError(f"Config file not found: {path}") from e
        except json.JSONDecodeError as e:
            raise ConfigError(f"Config file {path} is not valid JSON: {e}") from e
        return self.validate_experiment_config(raw)

    def validate_experiment_config(self, raw: Any) -> ExperimentConfig:
        if not isinstance(raw, dict):
            raise ConfigError("Experiment config must be a JSON object")
        errors: List[str] = []

        version = raw.get('schema_version', SCHEMA_VERSION)
        if version != SCHEMA_VERSION:
            errors.append(f"Unsupported schema_version {version}")

        experiment, error = validate_string_field(raw.get('experiment'), 'experiment', allow_empty=False)
        errors.extend([error] if error else [])

        world_entries = raw.get('worlds')
        if world_entries is None and 'world' in raw:
            world_entries = [raw['world']]
        worlds: List[WorldSpec] = []
        if not isinstance(world_entries, list) or not world_entries:
            errors.append("worlds must be a non-empty list of world specs")
        else:
            for i, spec in enumerate(world_entries):
                if not isinstance(spec, dict) or spec.get('kind') not in WORLD_BUILDERS:
                    errors.append(f"worlds[{i}]: kind must be one of {', '.join(WORLD_BUILDERS)}")
                elif not isinstance(spec.get('params', {}), dict):
                    errors.append(f"worlds[{i}].params must be an object")
                else:
                    worlds.append(spec)  # type: ignore[arg-type]

        learners: List[LearnerSpec] = []
        learner_entries = raw.get('learners')
        if not isinstance(learner_entries, list) or not learner_entries:
            errors.append("learners must be a non-empty list")
        else:
            for i, entry in enumerate(learner_entries):
                spec, problems = _validate_learner(entry, i)
                errors.extend(problems)
                if spec is not None and not problems:
                    learners.append(spec)

        schedule, error = validate_schedule(raw.get('m_schedule'))
        errors.extend([error] if error else [])
        trials, error = validate_positive_int(raw.get('trials'), 1, max_value=10 ** 6, field_name='trials')
        errors.extend([error] if error else [])
        seed, error = validate_seed(raw.get('seed'), self.default_seed)
        errors.extend([error] if error else [])
        mc_inputs, error = validate_positive_int(raw.get('mc_inputs'), self.mc_inputs, field_name='mc_inputs')
        errors.extend([error] if error else [])
        success_epsilon, error = validate_real_range(
            raw.get('success_epsilon'), self.success_epsilon, 0.0, 1.0, 'success_epsilon', low_inclusive=False)
        errors.extend([error] if error else [])
        resample = raw.get('resample_world', False)
        if not isinstance(resample, bool):
            errors.append("resample_world must be true or false")
        output, error = validate_string_field(raw.get('output'), 'output', max_length=4096)
        errors.extend([error] if error else [])

        if errors:
            raise ConfigError(errors)
        return {
            'schema_version': SCHEMA_VERSION,
            'experiment': experiment or '',
            'worlds': worlds,
            'learners': learners,
            'm_schedule': schedule or [],
            'trials': trials or 1,
            'seed': seed,
            'resample_world': bool(resample),
            'mc_inputs': mc_inputs or self.mc_inputs,
            'success_epsilon': success_epsilon,
            'output': output,
        }

    # Worlds

    def build_world(self, spec: WorldSpec, seed_override: Optional[int] = None) -> World:
        """world_from_spec with harness defaults filled in."""
        spec = dict(spec)  # type: ignore[assignment]
        params = dict(spec.get('params', {}))
        if spec.get('kind') == 'example1' and 'universe_size' not in params and 'n' in params:
            params['universe_size'] = self.universe_multiplier * int(params['n'])
        spec['params'] = params
        world = world_from_spec(spec, seed_override)
        world.memo_limit = self.fresh_memo_limit
        if len(world.hypotheses) > self.max_class_size:
            logger.warning(
                f"World {world.label!r} has {len(world.hypotheses)} members, above max_class_size "
                f"{self.max_class_size}; surrogate learners scale cubically in the class size"
            )
        return world

    def _learner_params(self, spec: LearnerSpec, world: World) -> Dict[str, Any]:
        params = {**self.learner_defaults, **spec.get('params', {})}
        if params.get('r') == CLASS_MIN:
            params['r'] = min(
                best_available_losses(member, world, self.mc_inputs, SeedStream(world.seed, (PURPOSE_EVALUATION,)))
                ['recall_loss']
                for member in world.hypotheses
            )
            logger.debug(f"modified_ml r resolved to {params['r']:.6f} on {world.label!r}")
        return params

    # Trials

    def _run_trial(
        self,
        config: ExperimentConfig,
        world_index: int,
        shared_world: Optional[World],
        m: int,
        trial: int,
    ) -> List[TrialRecord]:
        root = SeedStream(config['seed'])
        coordinate = (world_index, m, trial)
        world = shared_world
        if world is None:
            world_seed = root.child(PURPOSE_WORLD, *coordinate).derive_seed()
            world = self.build_world(config['worlds'][world_index], world_seed)
        experiment_id = f"{config['experiment']}/{world.label}"
        data = sample_training_set(world, m, root.child(PURPOSE_TRAINING, *coordinate))

        records: List[TrialRecord] = []
        for learner_index, spec in enumerate(config['learners']):
            name = spec['name']
            record: TrialRecord = {
                'experiment': experiment_id,
                'learner': name,
                'm': m,
                'trial': trial,
                'chosen_id': '',
                'expected': None,
                'empirical': None,
                'seed': config['seed'],
                'error': '',
                'wall_time': 0.0,
            }
            started = time.perf_counter()
            try:
                params = self._learner_params(spec, world)
                output = LEARNER_REGISTRY[name](world.hypotheses, data, params)
                record['wall_time'] = time.perf_counter() - started
                chosen = world.hypotheses[output['chosen']]
                record['chosen_id'] = chosen.id
                evaluation = root.child(PURPOSE_EVALUATION, *coordinate, learner_index)
                record['expected'] = best_available_losses(chosen, world, config['mc_inputs'], evaluation)
                record['empirical'] = empirical_losses(chosen, world.target_hypothesis, data.xs)
            except LearnerError as e:
                record['wall_time'] = time.perf_counter() - started
                record['error'] = f"{type(e).__name__}: {e}"
                logger.warning(f"{name} failed on {experiment_id} m={m} trial={trial}: {e}")
            except SetLearnError as e:
                record['wall_time'] = time.perf_counter() - started
                record['error'] = f"{type(e).__name__}: {e}"
                logger.error(f"{name} on {experiment_id} m={m} trial={trial}: {e}", exc_info=True)
            except Exception as e:
                record['wall_time'] = time.perf_counter() - started
                record['error'] = f"Unexpected {type(e).__name__}: {e}"
                logger.error(f"Unexpected failure of {name} on {experiment_id} m={m} trial={trial}: {e}", exc_info=True)
            records.append(record)
        return records

    def run_experiment(self, config: ExperimentConfig) -> List[TrialRecord]:
        """Run every (world, m, trial) of a validated config.

        Returns:
            Trial records sorted by (world, m, trial, learner order)
        """
        shared: Dict[int, Optional[World]] = {}
        for index, spec in enumerate(config['worlds']):
            shared[index] = None if config['resample_world'] else self.build_world(spec)

        tasks = [
            (index, m, trial)
            for index in range(len(config['worlds']))
            for m in config['m_schedule']
            for trial in range(config['trials'])
        ]
        logger.info(
            f"Running {config['experiment']!r}: {len(tasks)} trials x {len(config['learners'])} learners "
            f"on {self.workers} workers (seed={config['seed']})"
        )
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            futures = {
                task: pool.submit(self._run_trial, config, task[0], shared[task[0]], task[1], task[2])
                for task in tasks
            }
            results = {task: future.result() for task, future in futures.items()}
        for world in shared.values():
            if world is not None:
                world.forget_targets()

        records: List[TrialRecord] = []
        for task in sorted(results):
            records.extend(results[task])
        failures = sum(1 for record in records if record['error'])
        logger.info(f"Finished {config['experiment']!r}: {len(records)} rows, {failures} learner failures")
        return records

    # Verification

    def verify_all(
        self,
        trials: int,
        seed: int,
        verifiers: Optional[Dict[str, Verifier]] = None,
    ) -> VerificationReport:
        """Run every oracle verifier; the report's 'passed' drives the CLI exit status."""
        return self.oracle.run_all(trials, seed, verifiers)

    # Output

    def _format(self, value: Optional[float]) -> str:
        if value is None:
            return ''
        return format(value, self.float_format)

    def emit_results(self, records: Sequence[TrialRecord], fmt: str, path: str,
                     success_epsilon: Optional[float] = None) -> Path:
        """Write raw rows as CSV or the per-(experiment, learner, m) summary as JSON.

        Raises:
            ValueError: no records or unknown format
            OSError: unwritable path
        """
        if not records:
            raise ValueError("No records to emit")
        target = Path(path)
        target.parent.mkdir(parents=True, exist_ok=True)
        if fmt == 'csv':
            with open(target, 'w', encoding='utf-8', newline='') as f:
                writer = csv.writer(f, lineterminator='\n')
                writer.writerow(CSV_COLUMNS)
                for record in records:
                    expected = record['expected']
                    writer.writerow([
                        record['experiment'],
                        record['learner'],
                        record['m'],
                        record['trial'],
                        self._format(expected['precision_loss'] if expected else None),
                        self._format(expected['recall_loss'] if expected else None),
                        self._format(expected['scalar_loss'] if expected else None),
                        record['chosen_id'],
                        record['seed'],
                        record['error'],
                    ])
        elif fmt == 'json':
            payload = {
                'schema_version': SCHEMA_VERSION,
                'success_epsilon': success_epsilon,
                'summary': summarize(records, success_epsilon),
            }
            with open(target, 'w', encoding='utf-8', newline='\n') as f:
                json.dump(payload, f, indent=2, sort_keys=True)
                f.write('\n')
        else:
            raise ValueError(f"Unknown output format {fmt!r}")
        logger.info(f"Wrote {len(records)} records as {fmt} to {target}")
        return target


def _succeeded(report: Optional[LossReport], epsilon: float) -> bool:
    return report is not None and report['precision_loss'] <= epsilon and report['recall_loss'] <= epsilon


def _mean(values: List[float]) -> Optional[float]:
    return math.fsum(values) / len(values) if values else None


def summarize(records: Sequence[TrialRecord], success_epsilon: Optional[float] = None) -> List[SummaryRow]:
    """Per-(experiment, learner, m) means of expected losses and success fractions.

    Failed trials count toward the trial total and never as successes. The
    success interval is the 95% Wilson interval.
    """
    groups: Dict[Tuple[str, str, int], List[TrialRecord]] = {}
    for record in records:
        groups.setdefault((record['experiment'], record['learner'], record['m']), []).append(record)

    rows: List[SummaryRow] = []
    for (experiment, learner, m), group in sorted(groups.items()):
        done = [r['expected'] for r in group if r['expected'] is not None]
        row: SummaryRow = {
            'experiment': experiment,
            'learner': learner,
            'm': m,
            'trials': len(group),
            'failures': len(group) - len(done),
            'mean_precision_loss': _mean([r['precision_loss'] for r in done]),
            'mean_recall_loss': _mean([r['recall_loss'] for r in done]),
            'mean_scalar_loss': _mean([r['scalar_loss'] for r in done]),
            'successes': None,
            'success_rate': None,
            'success_ci_low': None,
            'success_ci_high': None,
        }
        if success_epsilon is not None:
            successes = sum(1 for r in group if _succeeded(r['expected'], success_epsilon))
            interval = binomtest(successes, len(group)).proportion_ci(confidence_level=0.95, method='wilson')
            row['successes'] = successes
            row['success_rate'] = successes / len(group)
            row['success_ci_low'] = float(interval.low)
            row['success_ci_high'] = float(interval.high)
        rows.append(row)
    return rows
