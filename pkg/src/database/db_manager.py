"""
Ledger manager for SQLite operations.
Records verification and prevariety runs so results can be compared across sessions.
"""

import sqlite3
from pathlib import Path
from datetime import datetime
from typing import Any, Dict, List, Optional, Union
from contextlib import contextmanager
import logging

from utils.rationals import format_rational
from .models import SCHEMA_SQL, PrevarietyRun, VerificationRun

logger = logging.getLogger(__name__)


class LedgerManager:
    """Manages all ledger operations."""

    def __init__(self, db_path: Union[str, Path]):
        """Open (and create if needed) the ledger.

        Args:
            db_path: Path to the SQLite ledger file
        """
        self.db_path = Path(db_path)
        self.db_path.parent.mkdir(parents=True, exist_ok=True)
        self._init_database()

    def _init_database(self):
        """Create database schema if it doesn't exist."""
        with self.get_connection() as conn:
            conn.executescript(SCHEMA_SQL)
            conn.commit()
        logger.debug(f"Ledger ready at {self.db_path}")

    @contextmanager
    def get_connection(self):
        """Context manager for database connections."""
        conn = sqlite3.connect(str(self.db_path))
        conn.row_factory = sqlite3.Row  # Enable column access by name
        try:
            yield conn
        finally:
            conn.close()

    # ============ Verification Runs ============

    def record_verification(self, report, newick: str) -> int:
        """Store a VerificationReport.

        Args:
            report: VerificationReport from verifier.verify
            newick: Canonical Newick of the verified tree

        Returns:
            Row id of the new run
        """
        bound = report.tropical_bound
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO verification_runs
                    (created_at, newick, n, depth, total_weight, seed, resamples, valuation,
                     verdict, height_sum_ok, claims_ok, tropical_bound, bound_tight)
                VALUES (?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?, ?)
            """, (
                datetime.now().isoformat(),
                newick,
                report.n,
                format_rational(report.d),
                format_rational(report.total_weight),
                report.seed,
                report.resamples,
                format_rational(report.valuation),
                report.verdict,
                report.height_sum_ok,
                report.claims.all_ok,
                format_rational(bound) if bound is not None else None,
                report.bound_tight,
            ))
            conn.commit()
            run_id = cursor.lastrowid
        logger.info(f"Recorded verification run {run_id} (n={report.n}, verdict={report.verdict})")
        return run_id

    def list_verifications(self, limit: Optional[int] = 20) -> List[VerificationRun]:
        """Most recent verification runs first."""
        query = "SELECT * FROM verification_runs ORDER BY id DESC"
        params: tuple = ()
        if limit is not None:
            query += " LIMIT ?"
            params = (limit,)
        with self.get_connection() as conn:
            rows = conn.execute(query, params).fetchall()
        return [VerificationRun.from_row(row) for row in rows]

    # ============ Prevariety Runs ============

    def record_prevariety(self, report, newick: str) -> int:
        """Store a PrevarietyReport; returns the row id."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            cursor.execute("""
                INSERT INTO prevariety_runs
                    (created_at, newick, m, sign, relations_checked, violations)
                VALUES (?, ?, ?, ?, ?, ?)
            """, (
                datetime.now().isoformat(),
                newick,
                report.m,
                report.sign,
                report.relations_checked,
                len(report.violations),
            ))
            conn.commit()
            run_id = cursor.lastrowid
        logger.info(f"Recorded prevariety run {run_id} (m={report.m}, violations={len(report.violations)})")
        return run_id

    def list_prevariety(self, limit: Optional[int] = 20) -> List[PrevarietyRun]:
        query = "SELECT * FROM prevariety_runs ORDER BY id DESC"
        params: tuple = ()
        if limit is not None:
            query += " LIMIT ?"
            params = (limit,)
        with self.get_connection() as conn:
            rows = conn.execute(query, params).fetchall()
        return [PrevarietyRun.from_row(row) for row in rows]

    # ============ Statistics ============

    def summary(self) -> Dict[str, Any]:
        """Counts over the whole ledger."""
        with self.get_connection() as conn:
            cursor = conn.cursor()
            stats = {}

            cursor.execute("SELECT COUNT(*) FROM verification_runs")
            stats['verification_runs'] = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM verification_runs WHERE verdict = 1")
            stats['verdicts_true'] = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM verification_runs WHERE bound_tight = 1")
            stats['bound_tight'] = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM prevariety_runs")
            stats['prevariety_runs'] = cursor.fetchone()[0]

            cursor.execute("SELECT COUNT(*) FROM prevariety_runs WHERE violations > 0")
            stats['prevariety_with_violations'] = cursor.fetchone()[0]

        return stats
