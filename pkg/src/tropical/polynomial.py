"""
Min-plus tropical polynomials over the coordinates p_sigma of a point in
(Q u {+inf})^C(n,m), and hypersurface membership.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Mapping, Sequence, Tuple
import logging

from utils.rationals import INFINITY, ExtendedRational, format_rational, is_infinite
from dissimilarity.vectors import DissimilarityVector, Subset

logger = logging.getLogger(__name__)


class DimensionMismatchError(ValueError):
    """A polynomial names a coordinate the point does not have."""


class TropicalPoint:
    """A point with one coordinate per m-subset of {1..n}, lexicographic."""

    def __init__(self, n: int, m: int, coordinates: Mapping[Subset, ExtendedRational]):
        if not 1 <= m <= n:
            raise ValueError(f"m={m} out of range for n={n}")
        expected = list(combinations(range(1, n + 1), m))
        if sorted(coordinates) != expected:
            raise DimensionMismatchError(
                f"Expected exactly {len(expected)} coordinates over the {m}-subsets of 1..{n}"
            )
        self.n = n
        self.m = m
        self._coords: Dict[Subset, ExtendedRational] = {
            sigma: (INFINITY if is_infinite(coordinates[sigma]) else Fraction(coordinates[sigma]))
            for sigma in expected
        }

    @classmethod
    def from_dissimilarity(cls, vector: DissimilarityVector) -> 'TropicalPoint':
        return cls(vector.n, vector.m, dict(vector.items()))

    @classmethod
    def from_values(cls, n: int, m: int, values: Sequence[ExtendedRational]) -> 'TropicalPoint':
        """Build from a flat list in lexicographic subset order."""
        subsets = list(combinations(range(1, n + 1), m))
        if len(values) != len(subsets):
            raise DimensionMismatchError(f"Expected {len(subsets)} values, got {len(values)}")
        return cls(n, m, dict(zip(subsets, values)))

    def negated(self) -> 'TropicalPoint':
        # -inf is not representable; +inf stays +inf
        return TropicalPoint(self.n, self.m, {
            sigma: value if is_infinite(value) else -value
            for sigma, value in self._coords.items()
        })

    def __getitem__(self, sigma: Iterable[int]) -> ExtendedRational:
        return self._coords[tuple(sorted(sigma))]

    def __contains__(self, sigma) -> bool:
        return tuple(sorted(sigma)) in self._coords

    def __len__(self) -> int:
        return len(self._coords)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self._coords)

    def values(self) -> List[ExtendedRational]:
        return list(self._coords.values())

    def __eq__(self, other):
        if not isinstance(other, TropicalPoint):
            return NotImplemented
        return (self.n, self.m, self._coords) == (other.n, other.m, other._coords)

    def __repr__(self):
        shown = ', '.join(format_rational(v) for v in self.values())
        return f"TropicalPoint(n={self.n}, m={self.m}, ({shown}))"


class TropicalTerm:
    """val(c) + sum of exponent * p_sigma."""

    def __init__(self, coefficient: Fraction, exponents: Mapping[Subset, int]):
        for sigma, power in exponents.items():
            if not isinstance(power, int) or power < 0:
                raise ValueError(f"Exponent of p{sigma} must be a nonnegative integer, got {power!r}")
        self.coefficient = Fraction(coefficient)
        self.exponents: Dict[Subset, int] = {
            tuple(sorted(sigma)): power for sigma, power in exponents.items() if power
        }

    def key(self) -> Tuple[Tuple[Subset, int], ...]:
        return tuple(sorted(self.exponents.items()))

    def evaluate(self, x: TropicalPoint) -> ExtendedRational:
        value = self.coefficient
        for sigma, power in self.exponents.items():
            if sigma not in x:
                raise DimensionMismatchError(f"Coordinate p{sigma} is not in a point of n={x.n}, m={x.m}")
            coordinate = x[sigma]
            if is_infinite(coordinate):
                return INFINITY
            value += power * coordinate
        return value

    def __repr__(self):
        parts = [str(self.coefficient)] if self.coefficient else []
        parts += [f"{power}*p{list(sigma)}" if power != 1 else f"p{list(sigma)}"
                  for sigma, power in self.key()]
        return ' + '.join(parts) or '0'


class TropicalPolynomial:
    """trop(f) = min over terms of val(c_alpha) + alpha . p."""

    def __init__(self, terms: Iterable[TropicalTerm]):
        self.terms: List[TropicalTerm] = list(terms)
        keys = [term.key() for term in self.terms]
        if len(set(keys)) != len(keys):
            raise ValueError("Exponent vectors of a tropical polynomial must be distinct")
        if len(self.terms) < 2:
            logger.debug("Tropical polynomial with fewer than two terms has an empty hypersurface")

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Fraction, Mapping[Subset, int]]]) -> 'TropicalPolynomial':
        return cls(TropicalTerm(coefficient, exponents) for coefficient, exponents in pairs)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"min({', '.join(repr(term) for term in self.terms)})"


def term_values(f: TropicalPolynomial, x: TropicalPoint) -> List[ExtendedRational]:
    return [term.evaluate(x) for term in f.terms]


def trop_eval(f: TropicalPolynomial, x: TropicalPoint) -> Tuple[ExtendedRational, int]:
    """Minimum over the terms of f at x and how many terms attain it.

    A term with a +inf coordinate at positive exponent is +inf. When every
    term is +inf the result is (+inf, number of terms).

    Raises:
        DimensionMismatchError: If f uses a coordinate x does not have
    """
    values = term_values(f, x)
    if not values:
        return INFINITY, 0
    best = min(values)
    return best, values.count(best)


def hypersurface_member(f: TropicalPolynomial, x: TropicalPoint) -> bool:
    """True when the minimum of f at x is attained at least twice."""
    _, count = trop_eval(f, x)
    return count >= 2
