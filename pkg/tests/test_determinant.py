import random
from fractions import Fraction
from itertools import permutations

import pytest

from puiseux.matrix import NonSquareMatrixError, PuiseuxMatrix, determinant
from puiseux.poly import PuiseuxPoly
from puiseux.reduction import apply_reduction


def naive_determinant(matrix):
    n = matrix.n_rows
    total = PuiseuxPoly.zero()
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = PuiseuxPoly.one()
        for i, j in enumerate(perm):
            term = term * matrix[i, j]
        total = total - term if inversions % 2 else total + term
    return total


def random_poly(rng, terms=3):
    return PuiseuxPoly({Fraction(rng.randint(-12, 12), rng.choice((1, 2, 3))): rng.randint(-50, 50)
                        for _ in range(rng.randint(0, terms))})


def random_matrix(rng, n):
    return PuiseuxMatrix([[random_poly(rng) for _ in range(n)] for _ in range(n)])


def random_valid_sequence(rng, n):
    """Distinct a's; each b avoids every a chosen so far."""
    reduced = []
    steps = []
    for a in rng.sample(range(1, n + 1), rng.randint(0, n - 1)):
        reduced.append(a)
        choices = [b for b in range(1, n + 1) if b not in reduced]
        steps.append((a, rng.choice(choices)))
    return steps


def test_identity():
    one, zero = PuiseuxPoly.one(), PuiseuxPoly.zero()
    matrix = PuiseuxMatrix([[one if i == j else zero for j in range(5)] for i in range(5)])
    assert determinant(matrix) == 1


def test_exact_cancellation():
    matrix = PuiseuxMatrix([
        [PuiseuxPoly.monomial(1, -1), PuiseuxPoly.one()],
        [PuiseuxPoly.one(), PuiseuxPoly.monomial(1, 1)],
    ])
    assert determinant(matrix).is_zero()


def test_empty_matrix():
    assert determinant(PuiseuxMatrix([])) == 1


def test_non_square():
    with pytest.raises(NonSquareMatrixError):
        determinant(PuiseuxMatrix([[PuiseuxPoly.one(), PuiseuxPoly.one()]]))


def test_zero_row():
    rng = random.Random(5)
    rows = random_matrix(rng, 3).rows()
    rows[1] = [PuiseuxPoly.zero()] * 3
    assert determinant(PuiseuxMatrix(rows)).is_zero()


@pytest.mark.parametrize('seed', range(40))
def test_matches_permutation_sum(seed):
    rng = random.Random(seed)
    matrix = random_matrix(rng, 1 + seed % 5)
    assert determinant(matrix) == naive_determinant(matrix)


def test_large_coefficients():
    rng = random.Random(99)
    rows = [[PuiseuxPoly({rng.randint(-3, 3): rng.randint(-2 ** 31, 2 ** 31) or 1}) for _ in range(4)]
            for _ in range(4)]
    matrix = PuiseuxMatrix(rows)
    assert determinant(matrix) == naive_determinant(matrix)


@pytest.mark.parametrize('seed', range(100))
def test_invariant_under_column_reduction(seed):
    rng = random.Random(1000 + seed)
    matrix = random_matrix(rng, 6)
    steps = random_valid_sequence(rng, 6)
    assert determinant(apply_reduction(matrix, steps)) == determinant(matrix)


def test_bounds_checked_access():
    matrix = PuiseuxMatrix([[PuiseuxPoly.one()]])
    with pytest.raises(IndexError):
        matrix[1, 0]


def test_valuation_matrix():
    matrix = PuiseuxMatrix([[PuiseuxPoly.monomial(2, -3), PuiseuxPoly.zero()]])
    assert matrix.valuation_matrix() == [[-3, float('inf')]]
