"""
Matrices of Puiseux polynomials and their exact determinants.
"""

from fractions import Fraction
from math import factorial, gcd
from typing import Dict, List, Sequence, Tuple
import logging

from utils.rationals import ExtendedRational
from .poly import PuiseuxPoly

logger = logging.getLogger(__name__)

# Practical bound for the subset-memoized Laplace expansion (2^n states)
MAX_DETERMINANT_SIZE = 16


class NonSquareMatrixError(ValueError):
    """Determinant requested for a non-square matrix."""


class PuiseuxMatrix:
    """Immutable rectangular grid of PuiseuxPoly entries, indexed from 0."""

    def __init__(self, rows: Sequence[Sequence[PuiseuxPoly]]):
        width = len(rows[0]) if rows else 0
        if any(len(row) != width for row in rows):
            raise ValueError("Matrix rows must all have the same length")
        for row in rows:
            for entry in row:
                if not isinstance(entry, PuiseuxPoly):
                    raise TypeError(f"Matrix entries must be PuiseuxPoly, got {type(entry).__name__}")
        self._rows: Tuple[Tuple[PuiseuxPoly, ...], ...] = tuple(tuple(row) for row in rows)
        self.n_rows = len(self._rows)
        self.n_cols = width

    def _check(self, i: int, j: int):
        if not (0 <= i < self.n_rows and 0 <= j < self.n_cols):
            raise IndexError(f"Entry ({i},{j}) outside a {self.n_rows}x{self.n_cols} matrix")

    def __getitem__(self, index: Tuple[int, int]) -> PuiseuxPoly:
        i, j = index
        self._check(i, j)
        return self._rows[i][j]

    def row(self, i: int) -> Tuple[PuiseuxPoly, ...]:
        self._check(i, 0)
        return self._rows[i]

    def column(self, j: int) -> Tuple[PuiseuxPoly, ...]:
        self._check(0, j)
        return tuple(row[j] for row in self._rows)

    def rows(self) -> List[List[PuiseuxPoly]]:
        return [list(row) for row in self._rows]

    @property
    def is_square(self) -> bool:
        return self.n_rows == self.n_cols

    def with_column(self, j: int, column: Sequence[PuiseuxPoly]) -> 'PuiseuxMatrix':
        """Copy with column j replaced."""
        self._check(0, j)
        if len(column) != self.n_rows:
            raise ValueError("Replacement column has the wrong length")
        rows = self.rows()
        for i, entry in enumerate(column):
            rows[i][j] = entry
        return PuiseuxMatrix(rows)

    def valuation_matrix(self) -> List[List[ExtendedRational]]:
        """Entrywise valuations (+inf for zero entries)."""
        return [[entry.valuation() for entry in row] for row in self._rows]

    def __eq__(self, other):
        if not isinstance(other, PuiseuxMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __hash__(self):
        return hash(self._rows)

    def __repr__(self):
        return f"PuiseuxMatrix({self.n_rows}x{self.n_cols})"


def _exponent_scale(matrix: PuiseuxMatrix) -> Fraction:
    """Largest rational g such that every exponent in the matrix is an integer multiple of g."""
    numerator = 0
    denominator = 1
    exponents = [e for row in matrix.rows() for entry in row for e in entry.exponents()]
    for e in exponents:
        denominator = denominator * e.denominator // gcd(denominator, e.denominator)
    for e in exponents:
        numerator = gcd(numerator, e.numerator * (denominator // e.denominator))
    return Fraction(numerator or 1, denominator)


def determinant(matrix: PuiseuxMatrix) -> PuiseuxPoly:
    """Exact determinant by Laplace expansion memoized over column subsets.

    Rows are expanded bottom-up: level k holds the minors of the last k rows
    for every k-subset of columns (O(2^n * n) products, no division).
    Exponents are scaled to integers by their common rational step g, and each
    row is packed into one integer by Kronecker substitution t^g -> 2^B with B
    above the Hadamard-style coefficient bound n! * prod(row L1 norms), so
    every polynomial product is a single big-integer multiplication.

    Args:
        matrix: Square PuiseuxMatrix, at most 16 x 16

    Returns:
        The determinant as a PuiseuxPoly

    Raises:
        NonSquareMatrixError: If the matrix is not square
    """
    if not matrix.is_square:
        raise NonSquareMatrixError(f"Determinant of a {matrix.n_rows}x{matrix.n_cols} matrix")
    n = matrix.n_rows
    if n == 0:
        return PuiseuxPoly.one()
    if n > MAX_DETERMINANT_SIZE:
        raise ValueError(f"Determinant size {n} exceeds the supported {MAX_DETERMINANT_SIZE}")

    step = _exponent_scale(matrix)
    rows = matrix.rows()

    bound = factorial(n)
    offsets = []
    for row in rows:
        nonzero = [entry for entry in row if entry]
        if not nonzero:
            return PuiseuxPoly.zero()
        offsets.append(min(int(entry.valuation() / step) for entry in nonzero))
        bound *= max(sum(abs(c) for _, c in entry) for entry in nonzero)
    bits = bound.bit_length() + 2

    packed: List[List[int]] = []
    for row, offset in zip(rows, offsets):
        packed.append([
            sum(c << (bits * (int(e / step) - offset)) for e, c in entry)
            for entry in row
        ])

    minors: Dict[int, int] = {0: 1}
    for r in range(n - 1, -1, -1):
        expanded: Dict[int, int] = {}
        row = packed[r]
        for mask, minor in minors.items():
            if not minor:
                continue
            for j in range(n):
                bit = 1 << j
                if mask & bit or not row[j]:
                    continue
                term = row[j] * minor
                # sign of column j inside the sorted column set mask | bit
                if (mask & (bit - 1)).bit_count() & 1:
                    term = -term
                key = mask | bit
                expanded[key] = expanded.get(key, 0) + term
        minors = expanded
        logger.debug(f"Determinant level {n - r}: {len(minors)} minors")

    packed_det = minors.get((1 << n) - 1, 0)
    return _unpack(packed_det, bits, sum(offsets), step)


def _unpack(value: int, bits: int, offset: int, step: Fraction) -> PuiseuxPoly:
    """Invert the Kronecker packing with balanced (signed) digits."""
    terms = []
    base = 1 << bits
    half = base >> 1
    mask = base - 1
    position = 0
    while value:
        digit = value & mask
        if digit >= half:
            digit -= base
        if digit:
            terms.append(((offset + position) * step, digit))
        value = (value - digit) >> bits
        position += 1
    return PuiseuxPoly._from_sorted(terms)
