# cli/main.py
"""
Batch front-end.

Usage:
    python main.py sample --n 3 --count 10 --seed 0 --out pairs.json
    python main.py verify --in pairs.json
    python main.py flow --in pairs.json --random 20 --inverse
    python main.py cm2 compat-check --exact

Exit codes:
    0: every asserted check passed
    1: a check failed
    2: usage, IO or schema error
"""

import logging
import sys
from typing import List, Optional

import pandas as pd

from config.settings import LOG_LEVEL
from storage.json_io import dumps, write_json
from .commands import COMMANDS, CommandOutcome
from .options import RunConfig, build_parser

logger = logging.getLogger(__name__)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_ERROR = 2


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        stream=sys.stderr,
        level=logging.DEBUG if verbose else LOG_LEVEL,
        format='%(levelname)s %(name)s: %(message)s',
        force=True,
    )


def _banner(config: RunConfig) -> None:
    err = sys.stderr
    print("=" * 60, file=err)
    print(f"  CM SPACES - {config.command}", file=err)
    print("=" * 60, file=err)
    if config.n is not None:
        print(f"n: {config.n}", file=err)
    print(f"Seed: {config.seed}", file=err)
    print(f"rank_tol: {config.tol.rank_tol:g}  sep_tol: {config.tol.sep_tol:g}", file=err)
    print("-" * 60, file=err)


def _summary(config: RunConfig, outcome: CommandOutcome) -> None:
    err = sys.stderr
    if outcome.table is not None and not outcome.table.empty:
        with pd.option_context('display.max_rows', 40, 'display.width', 120):
            print(outcome.table.to_string(index=False), file=err)
        print("-" * 60, file=err)
    status = "[PASS]" if outcome.passed else "[FAIL]"
    print(f"{status} {config.command}", file=err)
    if config.output is not None:
        print(f"Result saved to: {config.output}", file=err)
    print("=" * 60, file=err)


def _emit(config: RunConfig, document: dict) -> None:
    if config.output is not None:
        write_json(config.output, document)
    else:
        sys.stdout.write(dumps(document))
        sys.stdout.flush()


def main(argv: Optional[List[str]] = None) -> int:
    """Runs one subcommand and returns its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # argparse has already named the offending flag on stderr
        return EXIT_ERROR if e.code else EXIT_PASS

    _configure_logging(args.verbose)
    try:
        config = RunConfig.from_args(args)
    except (OSError, ValueError) as e:
        logger.error("bad configuration: %s", e)
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_ERROR
    _banner(config)

    try:
        outcome = COMMANDS[config.command](config)
        _emit(config, outcome.document)
    except (OSError, ValueError) as e:
        # CMSpaceError derives from ValueError
        logger.error("%s failed: %s", config.command, e)
        print(f"[ERROR] {e}", file=sys.stderr)
        return EXIT_ERROR

    _summary(config, outcome)
    return EXIT_PASS if outcome.passed else EXIT_FAIL


if __name__ == '__main__':
    sys.exit(main())
