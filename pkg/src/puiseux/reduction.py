"""
Column reductions: sequences of "subtract column b from column a" operators.

A sequence (a_1,b_1),...,(a_l,b_l) over an n-column matrix is valid when
  1. every index lies in 1..n,
  2. a_1..a_l are pairwise different,
  3. b_k is different from a_1..a_k for every k.
The empty sequence is valid. Indices are 1-based here, matching the usual
column numbering; PuiseuxMatrix itself is indexed from 0.
"""

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple
import logging

from .matrix import PuiseuxMatrix

logger = logging.getLogger(__name__)

CONDITION_RANGE = 'index-range'
CONDITION_DISTINCT_A = 'a-distinct'
CONDITION_B_FRESH = 'b-not-reduced'


class InvalidReductionError(ValueError):
    """A column reduction sequence breaks one of the validity conditions."""

    def __init__(self, message: str, step: int, condition: str):
        super().__init__(message)
        self.step = step
        self.condition = condition


class ColumnReductionSeq:
    """Ordered (a_k, b_k) column pairs, in application order."""

    def __init__(self, n: int, steps: Iterable[Tuple[int, int]] = ()):
        self.n = n
        self.steps: Tuple[Tuple[int, int], ...] = tuple((int(a), int(b)) for a, b in steps)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self.steps)

    def __len__(self):
        return len(self.steps)

    def __eq__(self, other):
        if isinstance(other, ColumnReductionSeq):
            return (self.n, self.steps) == (other.n, other.steps)
        if isinstance(other, (list, tuple)):
            return list(self.steps) == [tuple(step) for step in other]
        return NotImplemented

    def __repr__(self):
        return f"ColumnReductionSeq(n={self.n}, steps={list(self.steps)})"

    def to_list(self) -> List[List[int]]:
        return [[a, b] for a, b in self.steps]


class ReductionCheck:
    """Outcome of validate_reduction; truthy when the sequence is valid."""

    def __init__(self, valid: bool, step: Optional[int] = None,
                 condition: Optional[str] = None, detail: str = ''):
        self.valid = valid
        self.step = step
        self.condition = condition
        self.detail = detail

    def __bool__(self):
        return self.valid

    def __repr__(self):
        if self.valid:
            return 'ReductionCheck(valid)'
        return f"ReductionCheck(invalid at step {self.step}: {self.detail})"


def validate_reduction(steps: Sequence[Tuple[int, int]], n: int) -> ReductionCheck:
    """Check the three validity conditions, reporting the first failing step (1-based)."""
    reduced = set()
    for k, (a, b) in enumerate(steps, start=1):
        if not (1 <= a <= n and 1 <= b <= n):
            return ReductionCheck(False, k, CONDITION_RANGE,
                                  f"step {k} ({a},{b}) has an index outside 1..{n}")
        if a in reduced:
            return ReductionCheck(False, k, CONDITION_DISTINCT_A,
                                  f"a_{k} = {a} repeats an earlier a-index")
        reduced.add(a)
        if b in reduced:
            return ReductionCheck(False, k, CONDITION_B_FRESH,
                                  f"b_{k} = {b} is in {{a_1..a_{k}}} = {sorted(reduced)}")
    return ReductionCheck(True)


def apply_reduction(matrix: PuiseuxMatrix, steps: Sequence[Tuple[int, int]]) -> PuiseuxMatrix:
    """Subtract column b_k from column a_k for k = 1..l, in order.

    Args:
        matrix: Matrix to reduce (left untouched)
        steps: Valid reduction sequence over matrix.n_cols columns

    Returns:
        The column reduction of matrix

    Raises:
        InvalidReductionError: Naming the failed condition and step
    """
    check = validate_reduction(list(steps), matrix.n_cols)
    if not check:
        raise InvalidReductionError(check.detail, check.step, check.condition)

    columns = [list(matrix.column(j)) for j in range(matrix.n_cols)]
    for a, b in steps:
        columns[a - 1] = [x - y for x, y in zip(columns[a - 1], columns[b - 1])]
        logger.debug(f"Applied c_{{{a},{b}}}")

    rows = [[columns[j][i] for j in range(matrix.n_cols)] for i in range(matrix.n_rows)]
    return PuiseuxMatrix(rows)
