"""
Subcommand handlers and dispatch(argv) -> exit code.

Exit codes: 0 success, 1 a failed check or violations found, 2 usage, parse
or file errors. A verify run fails when the verdict, the height-sum identity or
any reduced-matrix claim fails.
"""

import sqlite3
import sys
from pathlib import Path
from typing import BinaryIO, Callable, Dict, List, Optional, Tuple
import logging

from utils.config import AppConfig, get_config
from trees.generator import random_ultrametric
from trees.newick import parse_newick, serialize_newick
from trees.ultrametric import as_ultrametric
from dissimilarity.metric import load_distance_matrix, realize_ultrametric
from dissimilarity.vectors import dissimilarity_vector
from tropical.plucker import check_prevariety
from tropical.polynomial import TropicalPoint
from verifier.batch import random_jobs, verify_batch
from verifier.verify import verify
from database.db_manager import LedgerManager
from .parser import CommandInvocation, UsageError, parse_invocation
from .reports import LedgerListing, TreeSummary, format_report

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2

# Every domain error (TreeError, DistanceMatrixError, HypothesisError, ...) is a
# ValueError; OSError covers missing or unreadable files.
INPUT_ERRORS = (ValueError, OSError, sqlite3.Error)


def _read_tree(path: Path):
    with open(path, 'r', encoding='utf-8') as f:
        text = f.read()
    tree = parse_newick(text)
    logger.info(f"Parsed {path}: {tree!r}")
    return tree


def _ledger(invocation: CommandInvocation, config: AppConfig) -> LedgerManager:
    return LedgerManager(invocation.get('ledger') or config.ledger_path)


def cmd_validate(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    summary = TreeSummary(_read_tree(invocation.inputs[0]), invocation.get('ultrametric', False))
    return summary, EXIT_OK if summary.ok else EXIT_FAIL


def cmd_dissim(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    tree = _read_tree(invocation.inputs[0])
    return dissimilarity_vector(tree, invocation.get('m')), EXIT_OK


def cmd_verify(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    tree = as_ultrametric(_read_tree(invocation.inputs[0]))
    report = verify(tree, seed=invocation.get('seed'), max_resamples=invocation.get('max_resamples'),
                    coefficient_bits=config.coefficient_bits)
    if invocation.get('record'):
        _ledger(invocation, config).record_verification(report, serialize_newick(tree))
    return report, EXIT_OK if report.ok else EXIT_FAIL


def cmd_plucker(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    tree = _read_tree(invocation.inputs[0])
    point = TropicalPoint.from_dissimilarity(dissimilarity_vector(tree, invocation.get('m')))
    report = check_prevariety(point, invocation.get('sign'))
    if invocation.get('record'):
        _ledger(invocation, config).record_prevariety(report, serialize_newick(tree))
    return report, EXIT_OK if report.ok else EXIT_FAIL


def cmd_realize(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    dm = load_distance_matrix(invocation.inputs[0])
    return realize_ultrametric(dm), EXIT_OK


def cmd_gen(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    tree = random_ultrametric(invocation.get('leaves'), invocation.get('depth'), invocation.get('seed'))
    return tree, EXIT_OK


def cmd_batch(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    jobs = random_jobs(invocation.get('count'), invocation.get('leaves_min'), invocation.get('leaves_max'),
                       invocation.get('depth'), invocation.get('seed'))
    batch = verify_batch(jobs, workers=invocation.get('workers'),
                         max_resamples=invocation.get('max_resamples'),
                         coefficient_bits=config.coefficient_bits)
    if invocation.get('record'):
        ledger = _ledger(invocation, config)
        for job, report in zip(batch.jobs, batch.reports):
            if report is not None:
                ledger.record_verification(report, job.name)
    return batch, EXIT_OK if batch.ok else EXIT_FAIL


def cmd_ledger(invocation: CommandInvocation, config: AppConfig) -> Tuple[object, int]:
    ledger = _ledger(invocation, config)
    limit = invocation.get('limit')
    listing = LedgerListing(ledger.summary(), ledger.list_verifications(limit), ledger.list_prevariety(limit))
    return listing, EXIT_OK


COMMANDS: Dict[str, Callable[[CommandInvocation, AppConfig], Tuple[object, int]]] = {
    'validate': cmd_validate,
    'dissim': cmd_dissim,
    'verify': cmd_verify,
    'plucker': cmd_plucker,
    'realize': cmd_realize,
    'gen': cmd_gen,
    'batch': cmd_batch,
    'ledger': cmd_ledger,
}


def _emit(data: bytes, output: Optional[Path], stdout: Optional[BinaryIO]):
    if output is not None:
        output.parent.mkdir(parents=True, exist_ok=True)
        output.write_bytes(data)
        logger.info(f"Report written to {output}")
        return
    stream = stdout if stdout is not None else sys.stdout.buffer
    stream.write(data)
    stream.flush()


def dispatch(argv: List[str], config: Optional[AppConfig] = None,
             stdout: Optional[BinaryIO] = None) -> int:
    """Run one command line and return its exit code.

    Args:
        argv: Arguments without the program name
        config: Configuration; the global one when None
        stdout: Binary stream for reports; sys.stdout.buffer when None

    Returns:
        0 on success, 1 on a failed check or violations, 2 on errors
    """
    config = config or get_config()
    try:
        invocation = parse_invocation(argv, config)
    except SystemExit as e:
        # argparse: --help exits 0, grammar errors exit 2
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR
    except UsageError as e:
        logger.error(f"Usage error: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    if invocation.verbose:
        logging.getLogger().setLevel(logging.DEBUG)
    logger.debug(f"Dispatching {invocation!r}")

    try:
        report, code = COMMANDS[invocation.subcommand](invocation, config)
        data = format_report(report, invocation.format)
    except INPUT_ERRORS as e:
        logger.error(f"{invocation.subcommand} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR

    _emit(data, invocation.output, stdout)
    return code
