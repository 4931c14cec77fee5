import random
from fractions import Fraction
from itertools import permutations

import pytest

from tropical.assignment import min_cost_assignment, tropical_det_bound
from tropical.polynomial import (
    DimensionMismatchError,
    TropicalPoint,
    TropicalPolynomial,
    TropicalTerm,
    hypersurface_member,
    trop_eval,
)
from utils.rationals import INFINITY

INF = INFINITY


def brute_force_bound(matrix):
    n = len(matrix)
    return min((sum(matrix[i][p[i]] for i in range(n)) for p in permutations(range(n))),
               default=Fraction(0))


def point(*values):
    return TropicalPoint.from_values(len(values), 1, list(values))


def linear(*subsets_and_powers, coefficient=0):
    return TropicalTerm(Fraction(coefficient), dict(subsets_and_powers))


def test_trop_eval_two_minimal_terms():
    f = TropicalPolynomial([linear(((1,), 1), ((2,), 1)), linear(((3,), 2))])
    assert trop_eval(f, point(1, 1, 1)) == (2, 2)


def test_trop_eval_unique_minimum():
    f = TropicalPolynomial([linear(((1,), 1)), linear(((2,), 1), coefficient=5)])
    assert trop_eval(f, point(0, 0)) == (0, 1)


def test_all_infinite_point():
    f = TropicalPolynomial([linear(((1,), 1)), linear(((2,), 1)), linear(((1,), 1), ((2,), 1))])
    assert trop_eval(f, point(INF, INF)) == (INF, 3)
    assert hypersurface_member(f, point(INF, INF))


def test_infinite_coordinate_only_hits_terms_that_use_it():
    f = TropicalPolynomial([linear(((1,), 1)), linear(((2,), 1))])
    assert trop_eval(f, point(INF, 4)) == (4, 1)


@pytest.mark.parametrize('values, member', [((0, 0), True), ((0, 1), False)])
def test_hypersurface_member(values, member):
    f = TropicalPolynomial([linear(((1,), 1)), linear(((2,), 1))])
    assert hypersurface_member(f, point(*values)) is member


def test_dimension_mismatch():
    f = TropicalPolynomial([linear(((1,), 1)), linear(((5,), 1))])
    with pytest.raises(DimensionMismatchError):
        trop_eval(f, point(0, 0))
    with pytest.raises(DimensionMismatchError):
        TropicalPoint.from_values(4, 2, [0, 0, 0])


def test_exponents_must_be_distinct():
    with pytest.raises(ValueError):
        TropicalPolynomial([linear(((1,), 1)), linear(((1,), 1), coefficient=3)])


def test_negative_exponent_rejected():
    with pytest.raises(ValueError):
        linear(((1,), -1))


def test_shift_invariance_of_homogeneous_relation():
    # every term has total degree 2, so shifting all coordinates keeps the argmin set
    terms = [linear(((1, 2), 1), ((3, 4), 1)), linear(((1, 3), 1), ((2, 4), 1)),
             linear(((1, 4), 1), ((2, 3), 1))]
    f = TropicalPolynomial(terms)
    x = TropicalPoint.from_values(4, 2, [3, 1, 4, 1, 5, 9])
    shifted = TropicalPoint.from_values(4, 2, [v + Fraction(7, 3) for v in x.values()])
    value, count = trop_eval(f, x)
    assert trop_eval(f, shifted) == (value + Fraction(14, 3), count)


def test_negated_point_keeps_infinity():
    x = TropicalPoint.from_values(3, 1, [1, INF, Fraction(-2, 3)])
    assert x.negated().values() == [-1, INF, Fraction(2, 3)]


def test_det_bound_examples():
    assert tropical_det_bound([[0] * 3 for _ in range(3)]) == 0
    diagonal = [[-1, INF, INF], [INF, -2, INF], [INF, INF, -3]]
    assert tropical_det_bound(diagonal) == -6


def test_det_bound_all_infinite():
    assert tropical_det_bound([[INF, INF], [INF, INF]]) == INF


def test_det_bound_empty_and_non_square():
    assert tropical_det_bound([]) == 0
    with pytest.raises(ValueError):
        tropical_det_bound([[1, 2]])


@pytest.mark.parametrize('seed', range(30))
def test_det_bound_matches_brute_force(seed):
    rng = random.Random(seed)
    n = 1 + seed % 6
    matrix = [[INF if rng.random() < 0.2 else Fraction(rng.randint(-20, 20), rng.choice((1, 2, 3)))
               for _ in range(n)] for _ in range(n)]
    assert tropical_det_bound(matrix) == brute_force_bound(matrix)


def test_assignment_is_a_permutation():
    cost, assignment = min_cost_assignment([[4, 1, 3], [2, 0, 5], [3, 2, 2]])
    assert sorted(assignment) == [0, 1, 2]
    assert cost == 5
