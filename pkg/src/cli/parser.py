"""
Command-line grammar and the validated CommandInvocation built from it.
"""

import argparse
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Optional
import logging

from utils.config import AppConfig
from utils.rationals import parse_rational

logger = logging.getLogger(__name__)

SUBCOMMANDS = ('validate', 'dissim', 'verify', 'plucker', 'realize', 'gen', 'batch', 'ledger')
FORMATS = ('json', 'csv', 'text')
SIGNS = ('as-given', 'negated')

U64_MAX = (1 << 64) - 1


class UsageError(ValueError):
    """Flags that parse but make no sense together."""


def _seed(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= value <= U64_MAX:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {value}")
    return value


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


class _Parser(argparse.ArgumentParser):
    # argparse prints usage and exits 2; keep the exit but route the message through logging too
    def error(self, message):
        logger.error(f"Usage error: {message}")
        super().error(message)


def build_parser(config: AppConfig) -> argparse.ArgumentParser:
    """Build the parser with defaults taken from config."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=FORMATS, default=config.get('output_format', 'json'),
                        help="Report format (default from config, json)")
    common.add_argument('-o', '--output', type=Path, help="Write the report here instead of stdout")
    common.add_argument('--verbose', action='store_true', help="Debug logging on stderr")

    seeded = argparse.ArgumentParser(add_help=False)
    seeded.add_argument('--seed', type=_seed, default=config.seed, help="Random seed (u64)")

    recording = argparse.ArgumentParser(add_help=False)
    recording.add_argument('--record', action='store_true', help="Store the run in the ledger")
    recording.add_argument('--ledger', type=Path, help="Ledger file (default from config)")

    resampling = argparse.ArgumentParser(add_help=False)
    resampling.add_argument('--max-resamples', type=int, default=config.max_resamples,
                            help="Reseeded retries for non-generic coefficients (default 3)")

    parser = _Parser(prog='tropdissim',
                     description="Exact dissimilarity vectors, valuation checks and tropical Pluecker tests")
    sub = parser.add_subparsers(dest='subcommand', metavar='COMMAND', parser_class=_Parser)
    sub.required = True

    p = sub.add_parser('validate', parents=[common], help="Parse and classify a Newick tree")
    p.add_argument('input', type=Path)
    p.add_argument('--ultrametric', action='store_true', help="Fail unless the tree is ultrametric")

    p = sub.add_parser('dissim', parents=[common], help="m-dissimilarity vector of a tree")
    p.add_argument('input', type=Path)
    p.add_argument('-m', type=int, required=True)

    p = sub.add_parser('verify', parents=[common, seeded, resampling, recording],
                       help="Check val(det M) = -D on an ultrametric tree")
    p.add_argument('input', type=Path)

    p = sub.add_parser('plucker', parents=[common, recording],
                       help="Three-term Pluecker relations on D(m,T)")
    p.add_argument('input', type=Path)
    p.add_argument('-m', type=int, required=True)
    p.add_argument('--sign', choices=SIGNS, default=config.get('sign', 'negated'))

    p = sub.add_parser('realize', parents=[common], help="Ultrametric tree of a distance matrix JSON")
    p.add_argument('input', type=Path)

    p = sub.add_parser('gen', parents=[common, seeded], help="Random ultrametric tree")
    p.add_argument('--leaves', type=int, required=True)
    p.add_argument('--depth', type=_rational, required=True)

    p = sub.add_parser('batch', parents=[common, seeded, resampling, recording],
                       help="Verify many random ultrametric trees")
    p.add_argument('--count', type=int, default=10)
    p.add_argument('--leaves-min', type=int, default=config.get('batch.leaves_min', 4))
    p.add_argument('--leaves-max', type=int, default=config.get('batch.leaves_max', 10))
    p.add_argument('--depth', type=_rational, default=parse_rational(str(config.get('batch.depth', '5'))))
    p.add_argument('--workers', type=int, default=config.workers)

    p = sub.add_parser('ledger', parents=[common], help="Summarize recorded runs")
    p.add_argument('--ledger', type=Path, help="Ledger file (default from config)")
    p.add_argument('--limit', type=int, default=20)

    return parser


class CommandInvocation:
    """One parsed and validated command line."""

    def __init__(self, subcommand: str, inputs: List[Path], options: Dict, output: Optional[Path] = None):
        if subcommand not in SUBCOMMANDS:
            raise UsageError(f"Unknown subcommand {subcommand!r}")
        self.subcommand = subcommand
        self.inputs = inputs
        self.options = options
        self.output = output

    @property
    def format(self) -> str:
        return self.options.get('format', 'json')

    @property
    def verbose(self) -> bool:
        return bool(self.options.get('verbose'))

    def get(self, name: str, default=None):
        return self.options.get(name, default)

    def validate(self):
        """Check flag ranges before any computation.

        Raises:
            UsageError: On an out-of-range flag
        """
        m = self.options.get('m')
        if m is not None and m < 2:
            raise UsageError(f"-m must be at least 2, got {m}")
        if self.options.get('max_resamples') is not None and self.options['max_resamples'] < 0:
            raise UsageError("--max-resamples must be >= 0")
        if self.subcommand == 'gen':
            if self.options['leaves'] < 2:
                raise UsageError(f"--leaves must be at least 2, got {self.options['leaves']}")
        if self.options.get('depth') is not None and self.options['depth'] <= 0:
            raise UsageError("--depth must be positive")
        if self.subcommand == 'batch':
            if self.options['count'] < 0:
                raise UsageError("--count must be >= 0")
            if not 4 <= self.options['leaves_min'] <= self.options['leaves_max']:
                raise UsageError("Need 4 <= --leaves-min <= --leaves-max")
            if self.options['workers'] < 1:
                raise UsageError("--workers must be >= 1")
        if self.subcommand == 'ledger' and self.options['limit'] < 0:
            raise UsageError("--limit must be >= 0")

    def __repr__(self):
        return f"CommandInvocation({self.subcommand!r}, inputs={[str(p) for p in self.inputs]})"


def parse_invocation(argv: List[str], config: AppConfig) -> CommandInvocation:
    """Parse argv into a validated CommandInvocation.

    Raises:
        SystemExit: From argparse on grammar errors (code 2) or --help (code 0)
        UsageError: On out-of-range flags
    """
    namespace = build_parser(config).parse_args(argv)
    options = vars(namespace)
    subcommand = options.pop('subcommand')
    output = options.pop('output', None)
    source = options.pop('input', None)
    invocation = CommandInvocation(subcommand, [source] if source else [], options, output)
    invocation.validate()
    return invocation
