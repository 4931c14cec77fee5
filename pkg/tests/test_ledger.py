import sqlite3

from database.db_manager import LedgerManager
from tropical.plucker import check_prevariety
from tropical.polynomial import TropicalPoint
from dissimilarity.vectors import dissimilarity_vector
from trees.newick import serialize_newick
from verifier.verify import verify


def test_schema_created(tmp_path):
    ledger = LedgerManager(tmp_path / 'nested' / 'ledger.db')
    with ledger.get_connection() as conn:
        tables = {row['name'] for row in conn.execute("SELECT name FROM sqlite_master WHERE type='table'")}
    assert {'verification_runs', 'prevariety_runs'} <= tables


def test_record_verification(tmp_path, fig1):
    ledger = LedgerManager(tmp_path / 'ledger.db')
    report = verify(fig1, seed=2)
    run_id = ledger.record_verification(report, serialize_newick(fig1))

    runs = ledger.list_verifications()
    assert [run.id for run in runs] == [run_id]
    run = runs[0]
    assert (run.n, run.depth, run.total_weight, run.valuation) == (10, '9', '35', '-35')
    assert run.verdict and run.height_sum_ok and run.claims_ok
    assert run.seed == 2
    assert run.to_dict()['D'] == '35'


def test_record_prevariety(tmp_path, bal4):
    ledger = LedgerManager(tmp_path / 'ledger.db')
    point = TropicalPoint.from_dissimilarity(dissimilarity_vector(bal4, 2))
    ledger.record_prevariety(check_prevariety(point, 'as-given'), serialize_newick(bal4))
    ledger.record_prevariety(check_prevariety(point, 'negated'), serialize_newick(bal4))

    runs = ledger.list_prevariety()
    assert [(run.sign, run.violations) for run in runs] == [('negated', 0), ('as-given', 1)]
    assert ledger.summary()['prevariety_with_violations'] == 1


def test_summary_and_limit(tmp_path, bal4):
    ledger = LedgerManager(tmp_path / 'ledger.db')
    for seed in range(3):
        ledger.record_verification(verify(bal4, seed=seed), serialize_newick(bal4))
    summary = ledger.summary()
    assert summary['verification_runs'] == 3
    assert summary['verdicts_true'] == 3
    assert len(ledger.list_verifications(limit=2)) == 2
    assert [run.seed for run in ledger.list_verifications(limit=None)] == [2, 1, 0]


def test_reopen_keeps_rows(tmp_path, bal4):
    path = tmp_path / 'ledger.db'
    LedgerManager(path).record_verification(verify(bal4), serialize_newick(bal4))
    assert LedgerManager(path).summary()['verification_runs'] == 1
    with sqlite3.connect(str(path)) as conn:
        assert conn.execute("SELECT valuation FROM verification_runs").fetchone()[0] == '-6'
