from trees.newick import parse_newick
from verifier.batch import BatchJob, random_jobs, verify_batch

from conftest import BAL4, CHERRY


def test_random_jobs_are_deterministic():
    first = random_jobs(5, 4, 8, 5, seed=3)
    second = random_jobs(5, 4, 8, 5, seed=3)
    assert [(job.name, job.seed) for job in first] == [(job.name, job.seed) for job in second]
    assert all(4 <= job.tree.n <= 8 for job in first)
    assert all(job.tree.depth == 5 for job in first)


def test_results_keep_job_order():
    jobs = random_jobs(6, 4, 7, 3, seed=8)
    parallel = verify_batch(jobs, workers=3)
    serial = verify_batch(jobs, workers=1)
    assert [r.valuation for r in parallel.reports] == [r.valuation for r in serial.reports]
    assert [r.n for r in parallel.reports] == [job.tree.n for job in jobs]
    assert parallel.ok
    assert parallel.verdicts_true == 6


def test_failing_job_is_recorded():
    jobs = [BatchJob(parse_newick(BAL4), seed=1), BatchJob(parse_newick(CHERRY), seed=1)]
    batch = verify_batch(jobs, workers=2)
    assert batch.reports[0].verdict
    assert batch.reports[1] is None
    assert 1 in batch.errors
    assert not batch.ok
    assert batch.to_dict()['runs'][1]['error']
