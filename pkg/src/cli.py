#!/usr/bin/env python3
"""
Command-line interface for PAC interval experiments

    run        run a seeded suite and write rows.csv, classes.csv, aggregates.json
    calibrate  one-shot calibration of a mu,sigma,y CSV, JSON on stdout
    report     recompute aggregates from a rows CSV

Exit codes: 0 success, 1 usage or config error, 2 trial failure, 3 I/O failure
"""

import argparse
import logging
import sys
from pathlib import Path

from src import config
from src.errors import PacError, StorageError
from src.experiments import ExperimentConfig, load_config, run_suite
from src.log import setup_logging
from src.models import PacTarget
from src.pac import calibrate, load_records, result_to_json
from src.reports import aggregates_json, recompute_aggregates

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_TRIAL = 2
EXIT_IO = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"❌ {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        description='PAC prediction intervals - calibration and seeded experiments'
    )
    parser.add_argument(
        '--log-level',
        type=str,
        default=None,
        help=f'Logging level (default: {config.LOG_LEVEL})'
    )
    commands = parser.add_subparsers(dest='command', required=True)

    run = commands.add_parser('run', help='Run an experiment suite')
    run.add_argument(
        '--config',
        type=str,
        default=None,
        help='key = value config file (default: built-in defaults)'
    )
    run.add_argument(
        '--out',
        type=str,
        default=config.OUTPUT_DIR,
        help=f'Output directory (default: {config.OUTPUT_DIR})'
    )
    run.add_argument(
        '--parallel',
        type=int,
        default=1,
        help='Trials run concurrently (default: 1)'
    )

    cal = commands.add_parser('calibrate', help='Calibrate a scale factor from a CSV of records')
    cal.add_argument('--records', type=str, required=True, help='CSV with columns mu,sigma,y')
    cal.add_argument('--epsilon', type=float, required=True, help='Allowed miscoverage')
    cal.add_argument(
        '--delta',
        type=float,
        default=config.DEFAULT_DELTA,
        help=f'Allowed failure probability (default: {config.DEFAULT_DELTA})'
    )

    rep = commands.add_parser('report', help='Recompute aggregates from a rows CSV')
    rep.add_argument('--rows', type=str, required=True, help=f'Rows CSV written by run ({config.ROWS_FILE})')
    rep.add_argument(
        '--errors',
        type=str,
        default=None,
        help=f'Failed seeds CSV (default: {config.ERRORS_FILE} next to the rows, if present)'
    )
    rep.add_argument('--out', type=str, default=None, help='Write the JSON here instead of stdout')
    return parser


def _run(args) -> int:
    cfg = load_config(args.config) if args.config else ExperimentConfig()

    print("\n📐 PAC interval experiments")
    print("=" * 50)
    print(f"   Config: {cfg.config_hash()}")
    print(f"   Seeds: {len(cfg.seed_list)} | Epsilons: {', '.join(str(e) for e in cfg.epsilon_list)}")
    print(f"   Profile: {cfg.noise_profile.value} | Predictor: {cfg.predictor.value} | Shift: {cfg.shift_severity}")

    def progress(data):
        print(f"   ⏳ Trial {data['trials_done']}/{data['trials_total']} (seed {data['seed']})")

    report = run_suite(cfg, args.out, parallel=args.parallel, progress_callback=progress)

    print(f"\n📊 Results ({len(report.rows)} rows):")
    for group in report.aggregates['groups']:
        coverage = group['metrics']['coverage']['mean']
        width = group['metrics']['avg_width']['mean']
        coverage_text = f"{coverage:.2f}%" if coverage is not None else "n/a"
        width_text = f"{width:.3f}" if width is not None else "n/a"
        print(f"   {group['method']:<4} eps={group['epsilon']:<5} coverage {coverage_text} | width {width_text}")
    print(f"\n✅ Report saved: {Path(args.out).resolve()}")

    if not report.complete:
        for error in report.errors:
            print(f"❌ Seed {error['seed']}: {error['error']}", file=sys.stderr)
        return EXIT_TRIAL
    return EXIT_OK


def _calibrate(args) -> int:
    records = load_records(args.records)
    result = calibrate(records, PacTarget(args.epsilon, args.delta))
    if not result.feasible:
        print(f"⚠️  Infeasible: {len(records)} records cannot certify 1-epsilon at this delta", file=sys.stderr)
    print(result_to_json(result))
    return EXIT_OK


def _report(args) -> int:
    text = aggregates_json(recompute_aggregates(args.rows, args.errors))
    if args.out:
        try:
            Path(args.out).write_text(text, encoding='utf-8')
        except OSError as e:
            raise StorageError(f"cannot write {args.out}: {e}") from e
        print(f"✅ Aggregates saved: {args.out}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {'run': _run, 'calibrate': _calibrate, 'report': _report}


def main(argv=None):
    """Main CLI entry point"""
    args = build_parser().parse_args(argv)
    setup_logging(level=args.log_level)

    try:
        return COMMANDS[args.command](args)
    except StorageError as e:
        print(f"❌ I/O error: {e}", file=sys.stderr)
        return EXIT_IO
    except PacError as e:
        print(f"❌ Error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == '__main__':
    sys.exit(main())
