"""setlearn command-line entry point.

Commands:
    run       --config <file> --out <dir> [--seed <u64>]
    verify    [--trials <n>] [--seed <u64>]
    worlds list
    frontier  --config <file>
"""

import argparse
import json
import logging
import os
import sys
from typing import Any, Dict, List, Optional

from models.errors import ConfigError, SetLearnError
from services.harness import ExperimentService
from services.losses import pareto_frontier
from services.worlds import list_world_kinds
from utils.config import DEFAULT_CONFIG_PATH, DEFAULTS, reload_config
from utils.validators import validate_positive_int, validate_seed

logger = logging.getLogger(__name__)


def setup_logging(config: Dict[str, Any]) -> None:
    """Configure root logging from the logging config section."""
    section = config.get('logging', {})
    level = getattr(logging, str(section.get('level', 'INFO')).upper(), logging.INFO)
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if section.get('file'):
        handlers.append(logging.FileHandler(section['file'], encoding='utf-8'))
    logging.basicConfig(
        level=level,
        format=section.get('format', '%(asctime)s - %(name)s - %(levelname)s - %(message)s'),
        handlers=handlers,
        force=True,
    )


def build_service(config: Dict[str, Any]) -> ExperimentService:
    return ExperimentService(
        config.get('harness', {}),
        learner_config=config.get('learners', {}),
        world_config=config.get('worlds', {}),
        oracle_config=config.get('oracle', {}),
        default_seed=config.get('app', {}).get('seed', 0),
    )


def cmd_run(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    service = build_service(config)
    experiment = service.load_experiment_config(args.config)
    if args.seed is not None:
        seed, error = validate_seed(args.seed, experiment['seed'])
        if error:
            raise ConfigError(error)
        experiment['seed'] = seed
    out_dir = args.out or experiment.get('output') or 'results'
    records = service.run_experiment(experiment)
    csv_path = service.emit_results(records, 'csv', os.path.join(out_dir, f"{experiment['experiment']}.csv"))
    json_path = service.emit_results(
        records, 'json', os.path.join(out_dir, f"{experiment['experiment']}.summary.json"),
        success_epsilon=experiment.get('success_epsilon'),
    )
    print(f"{csv_path}\n{json_path}")
    return 0


def cmd_verify(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    service = build_service(config)
    trials, error = validate_positive_int(args.trials, config.get('oracle', {}).get('trials', 1000), field_name='trials')
    if error:
        raise ConfigError(error)
    seed, error = validate_seed(args.seed, config.get('app', {}).get('seed', 0))
    if error:
        raise ConfigError(error)
    report = service.verify_all(trials, seed)
    for name, sub in report['details']['reports'].items():
        status = 'PASS' if sub['passed'] else 'FAIL'
        print(f"{status}  {name:<24} instances={sub['instances_checked']} violations={len(sub['violations'])}")
    if args.report:
        with open(args.report, 'w', encoding='utf-8') as f:
            json.dump(report, f, indent=2, sort_keys=True, default=str)
            f.write('\n')
    return 0 if report['passed'] else 1


def cmd_worlds(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    for entry in list_world_kinds():
        params = ', '.join(f"{k}: {v}" for k, v in entry['params'].items())
        print(f"{entry['kind']:<16} {entry['input_model']:<12} {entry['description']}")
        print(f"{'':<16} params: {params}")
    return 0


def cmd_frontier(args: argparse.Namespace, config: Dict[str, Any]) -> int:
    service = build_service(config)
    experiment = service.load_experiment_config(args.config)
    frontiers = {}
    for spec in experiment['worlds']:
        world = service.build_world(spec)
        frontiers[world.label] = pareto_frontier(world.hypotheses, world)
    print(json.dumps(frontiers, indent=2, sort_keys=True))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='setlearn', description='Set-function learning lab')
    parser.add_argument('--settings', default=DEFAULT_CONFIG_PATH, help='YAML settings file')
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run an experiment config')
    run.add_argument('--config', required=True, help='JSON experiment config')
    run.add_argument('--out', help='Output directory')
    run.add_argument('--seed', type=int, help='Root seed (overrides the config)')
    run.set_defaults(handler=cmd_run)

    verify = commands.add_parser('verify', help='Run the brute-force verifier suite')
    verify.add_argument('--trials', type=int, help='Random instances per verifier')
    verify.add_argument('--seed', type=int, help='Root seed')
    verify.add_argument('--report', help='Write the full JSON report here')
    verify.set_defaults(handler=cmd_verify)

    worlds = commands.add_parser('worlds', help='World catalogue')
    worlds.add_argument('action', choices=['list'])
    worlds.set_defaults(handler=cmd_worlds)

    frontier = commands.add_parser('frontier', help='Exact Pareto frontier of each world in a config')
    frontier.add_argument('--config', required=True, help='JSON experiment config')
    frontier.set_defaults(handler=cmd_frontier)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    settings = reload_config(args.settings)
    config = {section: settings.get_section(section) for section in DEFAULTS}
    setup_logging(config)
    try:
        return args.handler(args, config)
    except ConfigError as e:
        for message in e.messages:
            logger.error(f"Config error: {message}")
        return 2
    except SetLearnError as e:
        logger.error(f"{type(e).__name__}: {e}")
        return 2


if __name__ == '__main__':
    sys.exit(main())
