"""
Batch verification over many (tree, seed) jobs on a thread pool.
"""

import random
from concurrent.futures import ThreadPoolExecutor, as_completed
from fractions import Fraction
from typing import Dict, List, Optional, Union
import logging

from trees.generator import random_ultrametric
from trees.models import UltrametricTree
from trees.newick import serialize_newick
from .coefficients import DEFAULT_COEFFICIENT_BITS
from .verify import VerificationReport, verify

logger = logging.getLogger(__name__)


class BatchJob:
    """One tree to verify with its coefficient seed."""

    def __init__(self, tree: UltrametricTree, seed: int = 0, name: Optional[str] = None):
        self.tree = tree
        self.seed = seed
        self.name = name or serialize_newick(tree)

    def __repr__(self):
        return f"BatchJob(name={self.name!r}, seed={self.seed})"


class BatchReport:
    """Reports (or errors) in job order."""

    def __init__(self, jobs: List[BatchJob], reports: List[Optional[VerificationReport]],
                 errors: Dict[int, str]):
        self.jobs = jobs
        self.reports = reports
        self.errors = errors

    @property
    def verdicts_true(self) -> int:
        return sum(1 for report in self.reports if report is not None and report.verdict)

    @property
    def bound_tight(self) -> int:
        return sum(1 for report in self.reports if report is not None and report.bound_tight)

    @property
    def ok(self) -> bool:
        return not self.errors and all(report is not None and report.ok for report in self.reports)

    def to_dict(self) -> Dict:
        runs = []
        for index, (job, report) in enumerate(zip(self.jobs, self.reports)):
            entry = {'tree': job.name, 'seed': job.seed}
            if report is not None:
                entry['report'] = report.to_dict()
            else:
                entry['error'] = self.errors[index]
            runs.append(entry)
        return {
            'jobs': len(self.jobs),
            'verdicts_true': self.verdicts_true,
            'errors': len(self.errors),
            'runs': runs,
        }


def random_jobs(count: int, leaves_min: int, leaves_max: int,
                depth: Union[Fraction, int, str], seed: int) -> List[BatchJob]:
    """count random ultrametric trees with n in [leaves_min, leaves_max].

    Job k uses tree seed and coefficient seed derived from (seed, k).
    """
    if count < 0:
        raise ValueError(f"count must be >= 0, got {count}")
    if not 4 <= leaves_min <= leaves_max:
        raise ValueError(f"Need 4 <= leaves_min <= leaves_max, got {leaves_min}, {leaves_max}")

    rng = random.Random(seed)
    jobs = []
    for k in range(count):
        n = rng.randint(leaves_min, leaves_max)
        tree_seed = rng.getrandbits(32)
        tree = random_ultrametric(n, depth, tree_seed)
        jobs.append(BatchJob(tree, seed=rng.getrandbits(32)))
    return jobs


def verify_batch(jobs: List[BatchJob], workers: int = 4, max_resamples: int = 3,
                 coefficient_bits: int = DEFAULT_COEFFICIENT_BITS) -> BatchReport:
    """Verify every job; the outcome does not depend on worker count or completion order.

    A job that raises is recorded in BatchReport.errors instead of aborting the batch.
    """
    reports: List[Optional[VerificationReport]] = [None] * len(jobs)
    errors: Dict[int, str] = {}

    with ThreadPoolExecutor(max_workers=max(1, workers)) as executor:
        futures = {
            executor.submit(verify, job.tree, job.seed, max_resamples, coefficient_bits): index
            for index, job in enumerate(jobs)
        }
        for future in as_completed(futures):
            index = futures[future]
            try:
                reports[index] = future.result()
            except Exception as e:
                logger.error(f"Job {index} ({jobs[index].name}) failed: {e}")
                errors[index] = str(e)

    batch = BatchReport(jobs, reports, errors)
    logger.info(f"Batch finished: {batch.verdicts_true}/{len(jobs)} verdicts true, {len(errors)} errors")
    return batch
