"""
Sparse Puiseux polynomials: finite sums c * t^e with exact rational exponents
and arbitrary-precision integer coefficients.
"""

from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple, Union
import logging

from utils.rationals import INFINITY, ExtendedRational, format_rational

logger = logging.getLogger(__name__)

Exponent = Union[Fraction, int]


class PuiseuxPoly:
    """Immutable polynomial in t with rational exponents.

    Terms are kept sorted by ascending exponent with no zero coefficients, so
    the valuation is the first exponent and equality is structural.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms: Optional[Mapping[Exponent, int]] = None):
        merged: Dict[Fraction, int] = {}
        for exponent, coefficient in (terms or {}).items():
            if isinstance(coefficient, bool) or not isinstance(coefficient, int):
                raise TypeError(f"Coefficients must be integers, got {coefficient!r}")
            key = Fraction(exponent)
            merged[key] = merged.get(key, 0) + coefficient
        self._terms: Tuple[Tuple[Fraction, int], ...] = tuple(
            sorted((e, c) for e, c in merged.items() if c != 0)
        )

    @classmethod
    def _from_sorted(cls, terms: Iterable[Tuple[Fraction, int]]) -> 'PuiseuxPoly':
        poly = cls.__new__(cls)
        poly._terms = tuple(terms)
        return poly

    @classmethod
    def zero(cls) -> 'PuiseuxPoly':
        return cls._from_sorted(())

    @classmethod
    def constant(cls, coefficient: int) -> 'PuiseuxPoly':
        return cls({0: coefficient})

    @classmethod
    def one(cls) -> 'PuiseuxPoly':
        return cls.constant(1)

    @classmethod
    def monomial(cls, coefficient: int, exponent: Exponent) -> 'PuiseuxPoly':
        """coefficient * t^exponent"""
        return cls({exponent: coefficient})

    # Inspection

    def terms(self) -> Tuple[Tuple[Fraction, int], ...]:
        """(exponent, coefficient) pairs, ascending exponent."""
        return self._terms

    def exponents(self) -> Tuple[Fraction, ...]:
        return tuple(e for e, _ in self._terms)

    def coefficient(self, exponent: Exponent) -> int:
        exponent = Fraction(exponent)
        for e, c in self._terms:
            if e == exponent:
                return c
        return 0

    def valuation(self) -> ExtendedRational:
        """Least exponent present; +inf for the zero polynomial."""
        return self._terms[0][0] if self._terms else INFINITY

    def leading_coefficient(self) -> int:
        """Coefficient at the valuation (0 for the zero polynomial)."""
        return self._terms[0][1] if self._terms else 0

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return all(e == 0 for e, _ in self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def __iter__(self) -> Iterator[Tuple[Fraction, int]]:
        return iter(self._terms)

    # Arithmetic

    @staticmethod
    def _coerce(other) -> Optional['PuiseuxPoly']:
        if isinstance(other, PuiseuxPoly):
            return other
        if isinstance(other, int) and not isinstance(other, bool):
            return PuiseuxPoly.constant(other)
        return None

    def _combine(self, other: 'PuiseuxPoly', sign: int) -> 'PuiseuxPoly':
        merged = dict(self._terms)
        for e, c in other._terms:
            merged[e] = merged.get(e, 0) + sign * c
        return PuiseuxPoly._from_sorted(sorted((e, c) for e, c in merged.items() if c != 0))

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._combine(other, -1)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other._combine(self, -1)

    def __neg__(self):
        return PuiseuxPoly._from_sorted((e, -c) for e, c in self._terms)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        product: Dict[Fraction, int] = {}
        for e1, c1 in self._terms:
            for e2, c2 in other._terms:
                e = e1 + e2
                product[e] = product.get(e, 0) + c1 * c2
        return PuiseuxPoly._from_sorted(sorted((e, c) for e, c in product.items() if c != 0))

    __rmul__ = __mul__

    def __pow__(self, power: int):
        if not isinstance(power, int) or power < 0:
            return NotImplemented
        result = PuiseuxPoly.one()
        base = self
        while power:
            if power & 1:
                result = result * base
            base = base * base
            power >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(self._terms)

    def __str__(self):
        if not self._terms:
            return '0'
        return ' + '.join(f"{c}*t^({format_rational(e)})" for e, c in self._terms)

    def __repr__(self):
        return f"PuiseuxPoly({str(self)!r})"


def valuation(poly: PuiseuxPoly) -> ExtendedRational:
    """val(p): least exponent, +inf for 0."""
    return poly.valuation()
