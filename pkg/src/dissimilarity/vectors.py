"""
m-dissimilarity vectors: Steiner subtree weights over all m-subsets of leaves.
"""

from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, Iterator, List, Tuple
import logging

from trees.models import LabelError, Tree

logger = logging.getLogger(__name__)

Subset = Tuple[int, ...]


class DissimilarityVector:
    """D(m,T): one exact weight per m-subset of {1..n}, in lexicographic order."""

    def __init__(self, n: int, m: int, entries: Dict[Subset, Fraction]):
        if not 1 <= m <= n:
            raise ValueError(f"m={m} out of range for n={n}")
        expected = list(combinations(range(1, n + 1), m))
        if sorted(entries) != expected:
            raise ValueError(f"Expected exactly {len(expected)} entries over the {m}-subsets of 1..{n}")
        self.n = n
        self.m = m
        self._entries = {sigma: Fraction(entries[sigma]) for sigma in expected}

    def __getitem__(self, sigma: Iterable[int]) -> Fraction:
        return self._entries[tuple(sorted(sigma))]

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self) -> Iterator[Subset]:
        return iter(self._entries)

    def items(self) -> List[Tuple[Subset, Fraction]]:
        return list(self._entries.items())

    def values(self) -> List[Fraction]:
        return list(self._entries.values())

    def __eq__(self, other):
        if not isinstance(other, DissimilarityVector):
            return NotImplemented
        return (self.n, self.m, self._entries) == (other.n, other.m, other._entries)

    def __repr__(self):
        return f"DissimilarityVector(n={self.n}, m={self.m}, entries={len(self)})"

    def to_dict(self) -> Dict:
        return {
            'n': self.n,
            'm': self.m,
            'entries': [{'sigma': list(sigma), 'value': str(value)}
                        for sigma, value in self._entries.items()]
        }


def _subset_mask(tree: Tree, sigma: Iterable[int]) -> Tuple[int, int]:
    labels = sorted(set(sigma))
    if len(labels) < 2:
        raise ValueError(f"Need at least two leaves, got {labels}")
    mask = 0
    for label in labels:
        tree.leaf(label)  # raises LabelError for unknown labels
        mask |= 1 << (label - 1)
    return mask, len(labels)


def _cut_weights(tree: Tree) -> List[Tuple[int, Fraction]]:
    # (leaf mask below the edge, weight) for every edge
    return [(tree.leaf_mask(child), weight) for _, child, weight in tree.edges()]


def _steiner_from_cuts(cuts: List[Tuple[int, Fraction]], mask: int, size: int) -> Fraction:
    total = Fraction(0)
    for below, weight in cuts:
        inside = (below & mask).bit_count()
        if 0 < inside < size:
            total += weight
    return total


def steiner_weight(tree: Tree, sigma: Iterable[int]) -> Fraction:
    """Total weight of the smallest subtree containing the leaves in sigma.

    An edge belongs to that subtree exactly when both sides of the cut it makes
    contain a leaf of sigma.

    Args:
        tree: Any valid tree
        sigma: Leaf labels, at least two

    Returns:
        The exact Steiner weight

    Raises:
        LabelError: If sigma names an unknown leaf
        ValueError: If sigma has fewer than two leaves
    """
    mask, size = _subset_mask(tree, sigma)
    return _steiner_from_cuts(_cut_weights(tree), mask, size)


def dissimilarity_vector(tree: Tree, m: int) -> DissimilarityVector:
    """D(m,T) for 2 <= m <= n, entries in lexicographic subset order."""
    n = tree.n
    if not 2 <= m <= n:
        raise ValueError(f"m must satisfy 2 <= m <= {n}, got {m}")

    cuts = _cut_weights(tree)
    entries = {}
    for sigma in combinations(range(1, n + 1), m):
        mask = 0
        for label in sigma:
            mask |= 1 << (label - 1)
        entries[sigma] = _steiner_from_cuts(cuts, mask, m)

    logger.debug(f"Computed D({m},T) with {len(entries)} entries for n={n}")
    return DissimilarityVector(n, m, entries)


def relabel_vector(vector: DissimilarityVector, permutation: Dict[int, int]) -> DissimilarityVector:
    """Move the entry at sigma to pi(sigma)."""
    if sorted(permutation) != list(range(1, vector.n + 1)) or \
            sorted(permutation.values()) != list(range(1, vector.n + 1)):
        raise LabelError("Relabeling must be a permutation of 1..n")
    entries = {tuple(sorted(permutation[i] for i in sigma)): value
               for sigma, value in vector.items()}
    return DissimilarityVector(vector.n, vector.m, entries)
