"""
Deterministic report serialization (json, csv, text). Rationals are always
exact strings; nothing is ever written as a float.
"""

import csv
import io
import json
from typing import Dict, List
import logging

from utils.rationals import format_rational
from trees.models import Tree, UltrametricTree
from trees.newick import serialize_newick
from dissimilarity.vectors import DissimilarityVector
from tropical.plucker import PrevarietyReport
from verifier.batch import BatchReport
from verifier.verify import VerificationReport

logger = logging.getLogger(__name__)


class UnsupportedFormatError(ValueError):
    """The report type has no rendering in the requested format."""


class TreeSummary:
    """Outcome of `validate`: the classified tree and whether it met the requested kind."""

    def __init__(self, tree: Tree, require_ultrametric: bool = False):
        self.tree = tree
        self.ultrametric = isinstance(tree, UltrametricTree)
        self.ok = self.ultrametric or not require_ultrametric

    @property
    def kind(self) -> str:
        return 'ultrametric' if self.ultrametric else 'phylogenetic'

    def to_dict(self) -> Dict:
        data = {
            'kind': self.kind,
            'n': self.tree.n,
            'D': format_rational(self.tree.total_weight()),
        }
        if self.ultrametric:
            data['d'] = format_rational(self.tree.depth)
        data['newick'] = serialize_newick(self.tree)
        data['ok'] = self.ok
        return data


class LedgerListing:
    """Ledger summary plus the most recent runs."""

    def __init__(self, summary: Dict, verifications: List, prevariety: List):
        self.summary = summary
        self.verifications = verifications
        self.prevariety = prevariety

    def to_dict(self) -> Dict:
        return {
            'summary': self.summary,
            'verification_runs': [run.to_dict() for run in self.verifications],
            'prevariety_runs': [run.to_dict() for run in self.prevariety],
        }


def _verdict(ok: bool) -> str:
    return 'OK' if ok else 'FAIL'


def _json(data) -> bytes:
    return (json.dumps(data, indent=2, ensure_ascii=False) + '\n').encode('utf-8')


def _csv(header: List[str], rows: List[List[str]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    writer.writerows(rows)
    return buffer.getvalue().encode('utf-8')


def _text(line: str) -> bytes:
    return (line + '\n').encode('utf-8')


def _join(values) -> str:
    return '|'.join(str(v) for v in values)


def _format_verification(report: VerificationReport, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(report.to_dict())
    if fmt == 'text':
        return _text(f"verify n={report.n} d={format_rational(report.d)} D={format_rational(report.total_weight)} "
                     f"valuation={format_rational(report.valuation)} resamples={report.resamples} "
                     f"{_verdict(report.ok)}")
    raise UnsupportedFormatError(f"Verification reports have no {fmt} format")


def _format_vector(vector: DissimilarityVector, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(vector.to_dict())
    if fmt == 'csv':
        return _csv(['sigma', 'value'],
                    [[_join(sigma), format_rational(value)] for sigma, value in vector.items()])
    if fmt == 'text':
        return _text(f"dissim n={vector.n} m={vector.m} entries={len(vector)} OK")
    raise UnsupportedFormatError(f"Dissimilarity vectors have no {fmt} format")


def _format_prevariety(report: PrevarietyReport, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(report.to_list())
    if fmt == 'csv':
        rows = [[_join(v['S']), _join(v['quad']), _join(v['terms']), str(v['argmin_count'])]
                for v in report.to_list()]
        return _csv(['S', 'quad', 'terms', 'argmin_count'], rows)
    if fmt == 'text':
        return _text(f"plucker n={report.n} m={report.m} sign={report.sign} "
                     f"relations={report.relations_checked} violations={len(report.violations)} "
                     f"{_verdict(report.ok)}")
    raise UnsupportedFormatError(f"Prevariety reports have no {fmt} format")


def _format_batch(batch: BatchReport, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(batch.to_dict())
    if fmt == 'csv':
        rows = []
        for job, report in zip(batch.jobs, batch.reports):
            if report is None:
                rows.append([job.name, str(job.seed), '', '', '', 'error'])
            else:
                rows.append([job.name, str(job.seed), str(report.n), format_rational(report.total_weight),
                             format_rational(report.valuation), str(report.verdict).lower()])
        return _csv(['tree', 'seed', 'n', 'D', 'valuation', 'verdict'], rows)
    if fmt == 'text':
        return _text(f"batch jobs={len(batch.jobs)} verdicts_true={batch.verdicts_true} "
                     f"errors={len(batch.errors)} {_verdict(batch.ok)}")
    raise UnsupportedFormatError(f"Batch reports have no {fmt} format")


def _format_tree(tree: Tree, fmt: str) -> bytes:
    if fmt == 'text':
        return _text(serialize_newick(tree))
    if fmt == 'json':
        return _json(TreeSummary(tree).to_dict())
    raise UnsupportedFormatError(f"Trees have no {fmt} format")


def _format_summary(summary: TreeSummary, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(summary.to_dict())
    if fmt == 'text':
        depth = f" d={format_rational(summary.tree.depth)}" if summary.ultrametric else ''
        return _text(f"validate {summary.kind} n={summary.tree.n}{depth} "
                     f"D={format_rational(summary.tree.total_weight())} {_verdict(summary.ok)}")
    raise UnsupportedFormatError(f"Validation results have no {fmt} format")


def _format_ledger(listing: LedgerListing, fmt: str) -> bytes:
    if fmt == 'json':
        return _json(listing.to_dict())
    if fmt == 'text':
        s = listing.summary
        return _text(f"ledger verification_runs={s['verification_runs']} verdicts_true={s['verdicts_true']} "
                     f"bound_tight={s['bound_tight']} prevariety_runs={s['prevariety_runs']} "
                     f"with_violations={s['prevariety_with_violations']} "
                     f"{_verdict(s['verdicts_true'] == s['verification_runs'])}")
    raise UnsupportedFormatError(f"Ledger listings have no {fmt} format")


def format_report(report, fmt: str) -> bytes:
    """Serialize any report object in json, csv or text.

    Raises:
        UnsupportedFormatError: For an unknown format or a report type
            without that format
    """
    if fmt not in ('json', 'csv', 'text'):
        raise UnsupportedFormatError(f"Unknown format {fmt!r}")
    if isinstance(report, VerificationReport):
        return _format_verification(report, fmt)
    if isinstance(report, DissimilarityVector):
        return _format_vector(report, fmt)
    if isinstance(report, PrevarietyReport):
        return _format_prevariety(report, fmt)
    if isinstance(report, BatchReport):
        return _format_batch(report, fmt)
    if isinstance(report, TreeSummary):
        return _format_summary(report, fmt)
    if isinstance(report, LedgerListing):
        return _format_ledger(report, fmt)
    if isinstance(report, Tree):
        return _format_tree(report, fmt)
    raise UnsupportedFormatError(f"No serializer for {type(report).__name__}")
