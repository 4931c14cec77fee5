"""
Min-cost assignment over exact rationals with +inf entries, and the tropical
determinant bound min_pi sum_i V[i, pi(i)] it yields.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple
import logging

from utils.rationals import INFINITY, ExtendedRational, is_infinite

logger = logging.getLogger(__name__)


def min_cost_assignment(cost: Sequence[Sequence[ExtendedRational]]) -> Tuple[ExtendedRational, List[int]]:
    """Hungarian algorithm (minimization) with exact arithmetic.

    +inf entries are replaced by a finite penalty larger than any all-finite
    assignment can cost; if the optimum still uses one, no finite assignment
    exists and the cost is +inf.

    Args:
        cost: Square matrix of Fractions / ints / +inf

    Returns:
        (minimum cost, assignment) with assignment[i] = column of row i (0-based)

    Raises:
        ValueError: If the matrix is not square
    """
    n = len(cost)
    if any(len(row) != n for row in cost):
        raise ValueError("Cost matrix must be square (n x n)")
    if n == 0:
        return Fraction(0), []

    finite = [abs(Fraction(v)) for row in cost for v in row if not is_infinite(v)]
    largest = max(finite, default=Fraction(0))
    penalty = 2 * n * largest + 1
    matrix = [[penalty if is_infinite(v) else Fraction(v) for v in row] for row in cost]

    # 1-indexed potentials and matching, index 0 is the virtual start column
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    p = [0] * (n + 1)
    way = [0] * (n + 1)

    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv: List[ExtendedRational] = [INFINITY] * (n + 1)
        used = [False] * (n + 1)

        while True:
            used[j0] = True
            i0 = p[j0]
            delta: ExtendedRational = INFINITY
            j1 = 0

            for j in range(1, n + 1):
                if not used[j]:
                    cur = matrix[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j

            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta

            j0 = j1
            if p[j0] == 0:
                break

        # Flip the matching along the augmenting path
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break

    assignment = [-1] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1

    if any(is_infinite(cost[i][assignment[i]]) for i in range(n)):
        return INFINITY, assignment
    return sum((Fraction(cost[i][assignment[i]]) for i in range(n)), Fraction(0)), assignment


def tropical_det_bound(valuations: Sequence[Sequence[ExtendedRational]]) -> ExtendedRational:
    """min over permutations pi of sum_i V[i, pi(i)].

    val(det M) is at least this value for the valuation matrix V of M.
    """
    bound, _ = min_cost_assignment(valuations)
    return bound
