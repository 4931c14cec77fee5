"""
Ledger models and schema definitions.
Using raw SQLite for minimal dependencies.
"""

import sqlite3
from datetime import datetime
from typing import Any, Dict, Optional

# SQL schema definitions
SCHEMA_SQL = """
-- One row per verify run
CREATE TABLE IF NOT EXISTS verification_runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
    newick TEXT NOT NULL,
    n INTEGER NOT NULL,
    depth TEXT NOT NULL,
    total_weight TEXT NOT NULL,
    seed INTEGER NOT NULL,
    resamples INTEGER NOT NULL,
    valuation TEXT NOT NULL,
    verdict BOOLEAN NOT NULL,
    height_sum_ok BOOLEAN NOT NULL,
    claims_ok BOOLEAN NOT NULL,
    tropical_bound TEXT,
    bound_tight BOOLEAN DEFAULT 0
);

-- One row per plucker run
CREATE TABLE IF NOT EXISTS prevariety_runs (
    id INTEGER PRIMARY KEY AUTOINCREMENT,
    created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP,
    newick TEXT NOT NULL,
    m INTEGER NOT NULL,
    sign TEXT NOT NULL,
    relations_checked INTEGER NOT NULL,
    violations INTEGER NOT NULL
);

CREATE INDEX IF NOT EXISTS idx_verification_created ON verification_runs(created_at DESC);
CREATE INDEX IF NOT EXISTS idx_verification_verdict ON verification_runs(verdict);
CREATE INDEX IF NOT EXISTS idx_prevariety_created ON prevariety_runs(created_at DESC);
"""


def _parse_timestamp(value: Optional[str]) -> Optional[datetime]:
    return datetime.fromisoformat(value) if value else None


class VerificationRun:
    """A stored verification run. Rationals are kept as exact strings."""

    def __init__(self,
                 id: Optional[int] = None,
                 created_at: Optional[datetime] = None,
                 newick: str = "",
                 n: int = 0,
                 depth: str = "0",
                 total_weight: str = "0",
                 seed: int = 0,
                 resamples: int = 0,
                 valuation: str = "0",
                 verdict: bool = False,
                 height_sum_ok: bool = False,
                 claims_ok: bool = False,
                 tropical_bound: Optional[str] = None,
                 bound_tight: bool = False):
        self.id = id
        self.created_at = created_at or datetime.now()
        self.newick = newick
        self.n = n
        self.depth = depth
        self.total_weight = total_weight
        self.seed = seed
        self.resamples = resamples
        self.valuation = valuation
        self.verdict = verdict
        self.height_sum_ok = height_sum_ok
        self.claims_ok = claims_ok
        self.tropical_bound = tropical_bound
        self.bound_tight = bound_tight

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary for JSON export."""
        return {
            'id': self.id,
            'created_at': self.created_at.isoformat() if self.created_at else None,
            'newick': self.newick,
            'n': self.n,
            'd': self.depth,
            'D': self.total_weight,
            'seed': self.seed,
            'resamples': self.resamples,
            'valuation': self.valuation,
            'verdict': self.verdict,
            'height_sum_ok': self.height_sum_ok,
            'claims_ok': self.claims_ok,
            'tropical_bound': self.tropical_bound,
            'bound_tight': self.bound_tight,
        }

    @classmethod
    def from_row(cls, row: sqlite3.Row) -> 'VerificationRun':
        """Create VerificationRun instance from database row."""
        return cls(
            id=row['id'],
            created_at=_parse_timestamp(row['created_at']),
            newick=row['newick'],
            n=row['n'],
            depth=row['depth'],
            total_weight=row['total_weight'],
            seed=row['seed'],
            resamples=row['resamples'],
            valuation=row['valuation'],
            verdict=bool(row['verdict']),
            height_sum_ok=bool(row['height_sum_ok']),
            claims_ok=bool(row['claims_ok']),
            tropical_bound=row['tropical_bound'],
            bound_tight=bool(row['bound_tight'])
        )


class PrevarietyRun:
    """A stored prevariety check."""

    def __init__(self,
                 id: Optional[int] = None,
                 created_at: Optional[datetime] = None,
                 newick: str = "",
                 m: int = 2,
                 sign: str = "negated",
                 relations_checked: int = 0,
                 violations: int = 0):
        self.id = id
        self.created_at = created_at or datetime.now()
        self.newick = newick
        self.m = m
        self.sign = sign
        self.relations_checked = relations_checked
        self.violations = violations

    def to_dict(self) -> Dict[str, Any]:
        return {
            'id': self.id,
            'created_at': self.created_at.isoformat() if self.created_at else None,
            'newick': self.newick,
            'm': self.m,
            'sign': self.sign,
            'relations_checked': self.relations_checked,
            'violations': self.violations,
        }

    @classmethod
    def from_row(cls, row: sqlite3.Row) -> 'PrevarietyRun':
        return cls(
            id=row['id'],
            created_at=_parse_timestamp(row['created_at']),
            newick=row['newick'],
            m=row['m'],
            sign=row['sign'],
            relations_checked=row['relations_checked'],
            violations=row['violations']
        )
