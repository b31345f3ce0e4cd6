# cli/options.py
"""
Argument parsing and the run configuration built from it.
"""

import argparse
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import List, Optional

from config.settings import CLI_CONFIG
from matpair.models import Tolerances
from storage.results import load_document


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be >= 0, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}")
    if not value > 0 or value == float('inf'):
        raise argparse.ArgumentTypeError(f"must be a positive finite number, got {text}")
    return value


@dataclass(frozen=True)
class RunConfig:
    """
    Everything a subcommand needs, resolved from argv and the settings defaults.

    Attributes:
        command: subcommand name ('cm2 canonical' for nested ones)
        tol: tolerances with --tol / --sep-tol applied
        inputs: --in paths (report accepts several)
        input2: second pair file for equiv
        output: JSON destination; stdout when None
        random_steps: length of a seeded random program for flow
    """
    command: str
    n: Optional[int] = None
    count: int = CLI_CONFIG['default_count']
    samples: int = CLI_CONFIG['default_samples']
    seed: int = CLI_CONFIG['default_seed']
    tol: Tolerances = field(default_factory=Tolerances)
    inputs: List[Path] = field(default_factory=list)
    input2: Optional[Path] = None
    output: Optional[Path] = None
    program: Optional[Path] = None
    random_steps: Optional[int] = None
    exact: bool = False
    word_len: Optional[int] = None
    inverse: bool = False
    negative_control: bool = False
    conjugate: bool = False
    verbose: bool = False

    @property
    def input(self) -> Optional[Path]:
        return self.inputs[0] if self.inputs else None

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> 'RunConfig':
        """
        Raises:
            OSError: the --tolerances file cannot be read
            SchemaError: the --tolerances file is malformed
        """
        tol = Tolerances()
        if getattr(args, 'tolerances', None):
            tol = Tolerances.from_dict(load_document(args.tolerances))
        if getattr(args, 'tol', None) is not None:
            tol = replace(tol, rank_tol=args.tol)
        if getattr(args, 'sep_tol', None) is not None:
            tol = replace(tol, sep_tol=args.sep_tol)

        command = args.command
        if command == 'cm2':
            command = f"cm2 {args.cm2_command}"

        inputs = getattr(args, 'inputs', None) or []
        if not isinstance(inputs, list):
            inputs = [inputs]

        def optional_path(name: str) -> Optional[Path]:
            value = getattr(args, name, None)
            return Path(value) if value else None

        return cls(
            command=command,
            n=getattr(args, 'n', None),
            count=getattr(args, 'count', None) or CLI_CONFIG['default_count'],
            samples=getattr(args, 'samples', None) or CLI_CONFIG['default_samples'],
            seed=getattr(args, 'seed', CLI_CONFIG['default_seed']),
            tol=tol,
            inputs=[Path(p) for p in inputs],
            input2=optional_path('input2'),
            output=optional_path('output'),
            program=optional_path('program'),
            random_steps=getattr(args, 'random_steps', None),
            exact=getattr(args, 'exact', False),
            word_len=getattr(args, 'word_len', None),
            inverse=getattr(args, 'inverse', False),
            negative_control=getattr(args, 'negative_control', False),
            conjugate=getattr(args, 'conjugate', False),
            verbose=args.verbose,
        )


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--out', dest='output', metavar='PATH',
                        help="write the JSON document here instead of stdout")
    parser.add_argument('--verbose', '-v', action='store_true', help="debug logging on stderr")


def _add_tolerance(parser: argparse.ArgumentParser, separation: bool = False) -> None:
    parser.add_argument('--tolerances', metavar='PATH',
                        help="JSON object of tolerance overrides; --tol and --sep-tol apply on top")
    parser.add_argument('--tol', type=_positive_float, metavar='X',
                        help="relative rank cutoff sigma2/sigma1 (default from settings)")
    if separation:
        parser.add_argument('--sep-tol', dest='sep_tol', type=_positive_float, metavar='X',
                            help="minimum normalized eigenvalue separation for sampling")


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', type=_non_negative_int, default=CLI_CONFIG['default_seed'],
                        help="RNG seed (default: %(default)s)")


def _add_input(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--in', dest='inputs', metavar='PATH', required=True,
                        help="pair file: a pairs document, a list of pairs or one pair")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='cm_spaces',
        description="Calogero-Moser spaces: sampling, automorphisms, invariants and certificates",
        epilog="Exit codes: 0 all checks passed, 1 a check failed, 2 usage, IO or schema error",
    )
    subparsers = parser.add_subparsers(dest='command', required=True)

    sample_parser = subparsers.add_parser('sample', help="emit seeded member pairs")
    sample_parser.add_argument('--n', type=_positive_int, required=True, help="matrix size")
    sample_parser.add_argument('--count', type=_positive_int, default=CLI_CONFIG['default_count'],
                               help="number of pairs (default: %(default)s)")
    sample_parser.add_argument('--conjugate', action='store_true',
                               help="post-conjugate each pair by a random invertible matrix")
    _add_seed(sample_parser)
    _add_tolerance(sample_parser, separation=True)
    _add_common(sample_parser)

    verify_parser = subparsers.add_parser('verify', help="membership report for a pair file")
    _add_input(verify_parser)
    _add_tolerance(verify_parser)
    _add_common(verify_parser)

    flow_parser = subparsers.add_parser('flow', help="run an automorphism program over pairs")
    _add_input(flow_parser)
    source = flow_parser.add_mutually_exclusive_group(required=True)
    source.add_argument('--program', metavar='PATH', help="AutoProgram JSON file")
    source.add_argument('--random', dest='random_steps', type=_positive_int, metavar='STEPS',
                        help="seeded random program of this many steps")
    flow_parser.add_argument('--inverse', action='store_true',
                             help="append the formal inverse and check the round trip")
    _add_seed(flow_parser)
    _add_tolerance(flow_parser)
    _add_common(flow_parser)

    equiv_parser = subparsers.add_parser('equiv', help="compare two pair files item by item")
    _add_input(equiv_parser)
    equiv_parser.add_argument('--in2', dest='input2', metavar='PATH', required=True,
                              help="second pair file, same number of pairs")
    equiv_parser.add_argument('--word-len', dest='word_len', type=_positive_int, metavar='L',
                              help="longest trace word in the fingerprint")
    _add_seed(equiv_parser)
    _add_tolerance(equiv_parser)
    _add_common(equiv_parser)

    fingerprint_parser = subparsers.add_parser('fingerprint', help="conjugation invariants of each pair")
    _add_input(fingerprint_parser)
    fingerprint_parser.add_argument('--word-len', dest='word_len', type=_positive_int, metavar='L',
                                    help="longest trace word")
    _add_tolerance(fingerprint_parser)
    _add_common(fingerprint_parser)

    flex_parser = subparsers.add_parser('flex-check', help="tangent-span check on sampled points")
    flex_parser.add_argument('--n', type=_positive_int, required=True, help="matrix size")
    flex_parser.add_argument('--samples', type=_positive_int, default=CLI_CONFIG['default_samples'],
                             help="number of sampled points (default: %(default)s)")
    _add_seed(flex_parser)
    _add_tolerance(flex_parser, separation=True)
    _add_common(flex_parser)

    semihom_parser = subparsers.add_parser('semihom-check', help="one-vector generating check")
    semihom_parser.add_argument('--n', type=_positive_int, required=True, help="matrix size")
    semihom_parser.add_argument('--count', type=_positive_int, default=1,
                                help="number of base points, seeds seed..seed+count-1 (default: %(default)s)")
    semihom_parser.add_argument('--negative-control', dest='negative_control', action='store_true',
                                help="use a tangent vector with zero lambda part; passes when the check fails")
    _add_seed(semihom_parser)
    _add_tolerance(semihom_parser, separation=True)
    _add_common(semihom_parser)

    cm2_parser = subparsers.add_parser('cm2', help="tools for the explicit model of n = 2")
    cm2_sub = cm2_parser.add_subparsers(dest='cm2_command', required=True)

    canonical_parser = cm2_sub.add_parser('canonical', help="pair -> orbit of canonical coordinates")
    _add_input(canonical_parser)
    _add_tolerance(canonical_parser)
    _add_common(canonical_parser)

    compat_parser = cm2_sub.add_parser('compat-check', help="certificate of the compatible pair")
    compat_parser.add_argument('--exact', action='store_true',
                               help="Gaussian-rational grid instead of seeded complex points")
    compat_parser.add_argument('--samples', type=_positive_int,
                               default=CLI_CONFIG['compat_points'],
                               help="points on the floating-point grid (default: %(default)s)")
    _add_seed(compat_parser)
    _add_tolerance(compat_parser)
    _add_common(compat_parser)

    report_parser = subparsers.add_parser('report', help="aggregate earlier JSON outputs")
    report_parser.add_argument('--in', dest='inputs', metavar='PATH', action='append', required=True,
                               help="result file or directory of result files; repeatable")
    _add_common(report_parser)

    return parser
