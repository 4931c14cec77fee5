"""
Three-term tropical Pluecker relations and the prevariety check on a point.

For an (m-2)-subset S and i<j<k<l outside S the relation is
    min(p_{Sij} + p_{Skl}, p_{Sik} + p_{Sjl}, p_{Sil} + p_{Sjk})
with all coefficient valuations 0. A point lies in the prevariety when every
such minimum is attained at least twice.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Tuple
import logging

from utils.rationals import ExtendedRational, format_rational
from .polynomial import TropicalPoint, TropicalPolynomial, TropicalTerm, term_values

logger = logging.getLogger(__name__)

SIGNS = ('as-given', 'negated')


def _join(base: Tuple[int, ...], *extra: int) -> Tuple[int, ...]:
    return tuple(sorted(base + extra))


class ThreeTermRelation:
    """Descriptor of one relation: the shared subset S and the quadruple."""

    def __init__(self, S: Tuple[int, ...], quad: Tuple[int, int, int, int]):
        if len(quad) != 4 or list(quad) != sorted(set(quad)):
            raise ValueError(f"quad must be four increasing labels, got {quad}")
        if set(S) & set(quad):
            raise ValueError(f"S={S} and quad={quad} must be disjoint")
        self.S = tuple(sorted(S))
        self.quad = tuple(quad)

    def term_subsets(self) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
        """The three pairs of coordinates, in the order (ij|kl, ik|jl, il|jk)."""
        i, j, k, l = self.quad
        S = self.S
        return [
            (_join(S, i, j), _join(S, k, l)),
            (_join(S, i, k), _join(S, j, l)),
            (_join(S, i, l), _join(S, j, k)),
        ]

    def polynomial(self) -> TropicalPolynomial:
        terms = []
        for left, right in self.term_subsets():
            terms.append(TropicalTerm(Fraction(0), {left: 1, right: 1}))
        return TropicalPolynomial(terms)

    def sort_key(self):
        return (self.S, self.quad)

    def __eq__(self, other):
        if not isinstance(other, ThreeTermRelation):
            return NotImplemented
        return self.sort_key() == other.sort_key()

    def __hash__(self):
        return hash(self.sort_key())

    def __repr__(self):
        return f"ThreeTermRelation(S={list(self.S)}, quad={list(self.quad)})"


def three_term_relations(m: int, n: int) -> List[ThreeTermRelation]:
    """All three-term relations for m-subsets of {1..n}, lexicographic in (S, quad).

    There are C(n, m-2) * C(n-m+2, 4) of them; none when n < m + 2.

    Raises:
        ValueError: Unless 2 <= m <= n
    """
    if not 2 <= m <= n:
        raise ValueError(f"Need 2 <= m <= n, got m={m}, n={n}")
    labels = range(1, n + 1)
    relations = []
    for S in combinations(labels, m - 2):
        rest = [label for label in labels if label not in S]
        for quad in combinations(rest, 4):
            relations.append(ThreeTermRelation(S, quad))
    return relations


class Violation:
    """A relation whose minimum is attained only once."""

    def __init__(self, relation: ThreeTermRelation, terms: List[ExtendedRational], argmin_count: int):
        self.relation = relation
        self.terms = list(terms)
        self.argmin_count = argmin_count

    def to_dict(self) -> Dict:
        return {
            'S': list(self.relation.S),
            'quad': list(self.relation.quad),
            'terms': [format_rational(value) for value in self.terms],
            'argmin_count': self.argmin_count,
        }

    def __repr__(self):
        return f"Violation({self.to_dict()})"


class PrevarietyReport:
    """Violations of the three-term relations at one point."""

    def __init__(self, n: int, m: int, sign: str, relations_checked: int, violations: List[Violation]):
        self.n = n
        self.m = m
        self.sign = sign
        self.relations_checked = relations_checked
        self.violations = violations

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_list(self) -> List[Dict]:
        return [violation.to_dict() for violation in self.violations]

    def __repr__(self):
        return (f"PrevarietyReport(n={self.n}, m={self.m}, sign={self.sign!r}, "
                f"checked={self.relations_checked}, violations={len(self.violations)})")


def check_prevariety(x: TropicalPoint, sign: str = 'as-given') -> PrevarietyReport:
    """Run every three-term relation on x (negated first when sign is 'negated')."""
    if sign not in SIGNS:
        raise ValueError(f"sign must be one of {SIGNS}, got {sign!r}")
    point = x.negated() if sign == 'negated' else x
    relations = three_term_relations(point.m, point.n) if point.m >= 2 else []

    violations = []
    for relation in relations:
        values = term_values(relation.polynomial(), point)
        best = min(values)
        count = values.count(best)
        if count < 2:
            violations.append(Violation(relation, values, count))

    violations.sort(key=lambda violation: violation.relation.sort_key())
    if violations:
        logger.info(f"{len(violations)} of {len(relations)} three-term relations violated "
                    f"(n={point.n}, m={point.m}, sign={sign})")
    else:
        logger.debug(f"All {len(relations)} three-term relations hold (n={point.n}, m={point.m}, sign={sign})")
    return PrevarietyReport(point.n, point.m, sign, len(relations), violations)


def plucker_prevariety_check(x: TropicalPoint, sign: str = 'as-given') -> List[Violation]:
    """Violations of the three-term relations, sorted by (S, quad); empty when x passes."""
    return check_prevariety(x, sign).violations
