"""
Distance matrices: ultrametric checks, realization by ultrametric trees,
and the four-point condition.
"""

import json
from fractions import Fraction
from itertools import combinations, permutations
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union
import logging

from utils.rationals import format_rational, parse_rational
from trees.models import Tree, UltrametricTree

logger = logging.getLogger(__name__)


class DistanceMatrixError(ValueError):
    """Matrix is not square, not symmetric, negative, or has a nonzero diagonal."""


class NotUltrametricError(DistanceMatrixError):
    """d(x,z) > max(d(x,y), d(y,z)) for the witness triple."""

    def __init__(self, witness: Tuple[int, int, int]):
        x, y, z = witness
        super().__init__(f"Not ultrametric: d({x},{z}) > max(d({x},{y}), d({y},{z}))")
        self.witness = witness


class DistanceMatrix:
    """Symmetric n x n matrix of exact distances between points 1..n."""

    def __init__(self, rows: Sequence[Sequence[Union[Fraction, int, str]]]):
        n = len(rows)
        if any(len(row) != n for row in rows):
            raise DistanceMatrixError("Distance matrix must be square")
        values = [[v if isinstance(v, Fraction) else
                   (parse_rational(v) if isinstance(v, str) else Fraction(v))
                   for v in row] for row in rows]
        for i in range(n):
            if values[i][i] != 0:
                raise DistanceMatrixError(f"Diagonal entry ({i + 1},{i + 1}) is {values[i][i]}, expected 0")
            for j in range(i + 1, n):
                if values[i][j] != values[j][i]:
                    raise DistanceMatrixError(f"Not symmetric at ({i + 1},{j + 1})")
                if values[i][j] < 0:
                    raise DistanceMatrixError(f"Negative distance at ({i + 1},{j + 1})")
        self.n = n
        self._rows = tuple(tuple(row) for row in values)

    def __call__(self, i: int, j: int) -> Fraction:
        """Distance between points i and j (1-based)."""
        return self._rows[i - 1][j - 1]

    def rows(self) -> List[List[Fraction]]:
        return [list(row) for row in self._rows]

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self._rows == other._rows

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"

    def to_dict(self) -> dict:
        return {'n': self.n, 'd': [[format_rational(v) for v in row] for row in self._rows]}

    @classmethod
    def from_dict(cls, data: dict) -> 'DistanceMatrix':
        try:
            n = int(data['n'])
            rows = data['d']
        except (KeyError, TypeError, ValueError) as e:
            raise DistanceMatrixError(f"Malformed distance matrix document: {e}") from None
        if not isinstance(rows, list) or not all(isinstance(row, list) for row in rows):
            raise DistanceMatrixError("Distance matrix 'd' must be a list of rows, each a list")
        if len(rows) != n:
            raise DistanceMatrixError(f"Header says n={n} but matrix has {len(rows)} rows")
        return cls([[str(v) for v in row] for row in rows])


def load_distance_matrix(path: Union[str, Path]) -> DistanceMatrix:
    """Read DistanceMatrix JSON: {"n": int, "d": [[rational-as-string]]}."""
    with open(path, 'r', encoding='utf-8') as f:
        return DistanceMatrix.from_dict(json.load(f))


def dump_distance_matrix(dm: DistanceMatrix, path: Union[str, Path]):
    with open(path, 'w', encoding='utf-8') as f:
        json.dump(dm.to_dict(), f, indent=2)


def pairwise_distances(tree: Tree) -> DistanceMatrix:
    """Leaf-to-leaf path weights of a tree."""
    leaves = tree.leaves()
    rows = [[tree.distance(u, w) for w in leaves] for u in leaves]
    return DistanceMatrix(rows)


def ultrametric_witness(dm: DistanceMatrix) -> Optional[Tuple[int, int, int]]:
    """First triple (x,y,z), lexicographically, with d(x,z) > max(d(x,y), d(y,z))."""
    for x, y, z in permutations(range(1, dm.n + 1), 3):
        if dm(x, z) > max(dm(x, y), dm(y, z)):
            return (x, y, z)
    return None


def is_ultrametric(dm: DistanceMatrix) -> bool:
    return ultrametric_witness(dm) is None


def realize_ultrametric(dm: DistanceMatrix) -> UltrametricTree:
    """Build a binary ultrametric tree whose leaf distances equal dm exactly.

    Closest-pair agglomeration: repeatedly merge the two clusters at minimum
    distance under a new node at height distance/2, ties broken by the
    smallest leaf labels. Merges at equal heights become zero-weight edges.

    Raises:
        NotUltrametricError: With a witness triple
        DistanceMatrixError: If two distinct points are at distance 0
    """
    if dm.n < 2:
        raise DistanceMatrixError("Need at least two points")
    witness = ultrametric_witness(dm)
    if witness is not None:
        raise NotUltrametricError(witness)
    for i, j in combinations(range(1, dm.n + 1), 2):
        if dm(i, j) <= 0:
            raise DistanceMatrixError(f"Points {i} and {j} are at distance 0")

    n = dm.n
    parents: List[Optional[int]] = [None] * n
    weights: List[Optional[Fraction]] = [None] * n
    labels: List[Optional[int]] = list(range(1, n + 1))
    heights = [Fraction(0)] * n
    # (smallest label, node); ultrametricity makes any member a valid representative
    clusters = [(label, label - 1) for label in range(1, n + 1)]

    while len(clusters) > 1:
        best = None
        for a, b in combinations(range(len(clusters)), 2):
            distance = dm(clusters[a][0], clusters[b][0])
            key = (distance, clusters[a][0], clusters[b][0])
            if best is None or key < best[0]:
                best = (key, a, b)
        (distance, _, _), a, b = best
        height = distance / 2
        node = len(parents)
        parents.append(None)
        weights.append(None)
        labels.append(None)
        heights.append(height)
        for _, child in (clusters[a], clusters[b]):
            parents[child] = node
            weights[child] = height - heights[child]
        merged = (min(clusters[a][0], clusters[b][0]), node)
        clusters.pop(b)
        clusters[a] = merged

    tree = UltrametricTree(parents, weights, labels)
    logger.info(f"Realized ultrametric tree with n={n}, d={tree.depth}")
    return tree


def four_point_violations(dm: DistanceMatrix) -> List[Tuple[int, int, int, int]]:
    """Quadruples i<j<k<l where max(d_ij+d_kl, d_ik+d_jl, d_il+d_jk) is attained once.

    Tree metrics have none.
    """
    violations = []
    for i, j, k, l in combinations(range(1, dm.n + 1), 4):
        sums = [dm(i, j) + dm(k, l), dm(i, k) + dm(j, l), dm(i, l) + dm(j, k)]
        if sums.count(max(sums)) < 2:
            violations.append((i, j, k, l))
    return violations
