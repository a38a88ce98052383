"""
dlp-qubo - Discrete logarithms over GF(2^n) as QUBO problems
Command-line entry point

Commands:
- field-info: field polynomial, basis matrices and multiplication table
- transform: write the QUBO for t^y = h plus its decode sidecar
- solve: minimize a QUBO file exhaustively or by simulated annealing
- decode: read exponents back from a solution file and verify them
- e2e: transform, solve, decode and verify in one run
- report: measured against estimated variable counts
- stats: binomial tail and success-rate calculations
"""

import argparse
import sys
import traceback
from pathlib import Path
from typing import List, Optional

from pydantic import ValidationError

from config.settings import settings
from cli.commands import EXIT_INPUT_ERROR, run
from cli.run_config import RunConfig
from utils.helpers import parse_int_list
from utils.logger import setup_logger

# Root logger so every module logger reaches stderr
logger = setup_logger('')


def _add_instance_args(parser: argparse.ArgumentParser):
    parser.add_argument('--n', type=int, required=True, help='extension degree')
    element = parser.add_mutually_exclusive_group(required=True)
    element.add_argument('--h-nb', help="target in normal-basis bits, big-endian (e.g. 110)")
    element.add_argument('--h-poly', help='target as polynomial-basis hex (e.g. 0x6)')


def _add_solver_args(parser: argparse.ArgumentParser):
    parser.add_argument('--method', choices=['auto', 'exhaustive', 'sa'], default='auto')
    parser.add_argument('--reads', type=int, help=f'annealing reads (default {settings.SA_READS})')
    parser.add_argument('--sweeps', type=int, help=f'sweeps per anneal (default {settings.SA_SWEEPS})')
    parser.add_argument('--restarts', type=int, help=f'anneals per read (default {settings.SA_RESTARTS})')
    parser.add_argument('--seed', type=int, default=settings.DEFAULT_SEED)
    parser.add_argument('--plot', dest='plot_path', type=Path,
                        help='write an HTML energy histogram (annealing only)')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='dlp-qubo',
        description='Reduce discrete logarithms over GF(2^n) to QUBO and solve them.',
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument('--machine', action='store_true', help='key=value output')
    parser.add_argument('--log-level', default=None, help='override DLPQ_LOG_LEVEL')
    commands = parser.add_subparsers(dest='command', required=True)

    info = commands.add_parser('field-info', help='show the field and basis tables')
    info.add_argument('--n', type=int, required=True)
    info.add_argument('--rotations', action='store_true', help='also print T(1)..T(n-1)')

    trans = commands.add_parser('transform', help='write a QUBO and its sidecar')
    _add_instance_args(trans)
    trans.add_argument('--out', dest='out_path', type=Path, required=True)
    trans.add_argument('--dump', action='store_true', help='print the squared constraints')

    solve = commands.add_parser('solve', help='minimize a QUBO file')
    solve.add_argument('--in', dest='in_path', type=Path, required=True)
    solve.add_argument('--out', dest='out_path', type=Path, help='write the solution file')
    _add_solver_args(solve)

    decode = commands.add_parser('decode', help='decode and verify a solution file')
    decode.add_argument('--in', dest='in_path', type=Path, help='QUBO file (sidecar next to it)')
    decode.add_argument('--meta', dest='meta_path', type=Path, help='explicit sidecar path')
    decode.add_argument('--solution', dest='solution_path', type=Path, required=True)

    e2e = commands.add_parser('e2e', help='transform, solve, decode and verify')
    _add_instance_args(e2e)
    _add_solver_args(e2e)
    e2e.add_argument('--max-retries', type=int, help=f'default {settings.MAX_RETRIES}')
    e2e.add_argument('--dump', action='store_true')

    report = commands.add_parser('report', help='variable counts against 3n^2 and 4n^2')
    report.add_argument('--n-list', type=parse_int_list, required=True)
    report.add_argument('--target-exponent', type=int, default=1)
    report.add_argument('--csv', dest='csv_path', type=Path)
    report.add_argument('--plot', dest='plot_path', type=Path)

    stats = commands.add_parser('stats', help='binomial statistics of solver runs')
    actions = stats.add_subparsers(dest='stats_action', required=True)
    tail = actions.add_parser('tail', help='log10 P(X >= threshold) under random guessing')
    tail.add_argument('--trials', type=int, required=True)
    tail.add_argument('--threshold', type=int, required=True)
    tail.add_argument('--space-bits', type=int, required=True)
    tail.add_argument('--significance', type=float)
    rate = actions.add_parser('rate', help='exact success rate')
    rate.add_argument('--trials', type=int, required=True)
    rate.add_argument('--successes', type=int, required=True)

    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    values = {key: value for key, value in vars(args).items() if value is not None}
    values.pop('log_level', None)
    return RunConfig(**values)


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, validate them and run the command."""
    args = build_parser().parse_args(argv)
    if args.log_level:
        logger.setLevel(args.log_level.upper())
        for handler in logger.handlers:
            handler.setLevel(args.log_level.upper())

    try:
        settings.validate()
        config = config_from_args(args)
    except ValidationError as e:
        logger.error(f"Invalid arguments: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as e:
        logger.error(f"Configuration error: {str(e)}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    return run(config)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except Exception as e:
        logger.error(f"Application error: {str(e)}\n{traceback.format_exc()}")
        sys.exit(EXIT_INPUT_ERROR)
