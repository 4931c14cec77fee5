"""
Seeded random tree generation.
Used for property runs, batch verification and the `gen` command.
"""

import random
from fractions import Fraction
from typing import List, Optional, Union
import logging

from .models import PhyloTree, UltrametricTree

logger = logging.getLogger(__name__)

# Merge heights are multiples of d / HEIGHT_GRID
HEIGHT_GRID = 8


def random_ultrametric(n: int, d: Union[Fraction, int, str], seed: int) -> UltrametricTree:
    """Generate a random binary d-equidistant tree.

    Leaves start as singleton clusters at height 0; n-1 merges at sorted random
    heights on the grid d/8 (the last at d) join two random clusters each.
    Repeated heights give zero-weight internal edges, never zero leaf distances.

    Args:
        n: Number of leaves (>= 2)
        d: Depth (> 0)
        seed: Seed; equal seeds give identical trees

    Returns:
        A valid UltrametricTree
    """
    if n < 2:
        raise ValueError(f"Need at least 2 leaves, got {n}")
    d = Fraction(d)
    if d <= 0:
        raise ValueError(f"Depth must be positive, got {d}")

    rng = random.Random(seed)
    merge_heights = sorted(
        d * Fraction(rng.randint(1, HEIGHT_GRID - 1), HEIGHT_GRID) for _ in range(n - 2)
    )
    merge_heights.append(d)

    parents: List[Optional[int]] = [None] * n
    weights: List[Optional[Fraction]] = [None] * n
    labels: List[Optional[int]] = list(range(1, n + 1))
    heights = [Fraction(0)] * n
    clusters = list(range(n))

    for height in merge_heights:
        i, j = sorted(rng.sample(range(len(clusters)), 2))
        node = len(parents)
        parents.append(None)
        weights.append(None)
        labels.append(None)
        heights.append(height)
        for child in (clusters[i], clusters[j]):
            parents[child] = node
            weights[child] = height - heights[child]
        clusters.pop(j)
        clusters[i] = node

    tree = UltrametricTree(parents, weights, labels)
    logger.debug(f"random_ultrametric(n={n}, d={d}, seed={seed}) -> {tree!r}")
    return tree


def random_phylogenetic(n: int, seed: int, max_weight: int = 12) -> PhyloTree:
    """Generate a random binary phylogenetic tree with positive rational weights."""
    if n < 2:
        raise ValueError(f"Need at least 2 leaves, got {n}")

    rng = random.Random(seed)
    parents: List[Optional[int]] = [None] * n
    weights: List[Optional[Fraction]] = [None] * n
    labels: List[Optional[int]] = list(range(1, n + 1))
    clusters = list(range(n))

    while len(clusters) > 1:
        i, j = sorted(rng.sample(range(len(clusters)), 2))
        node = len(parents)
        parents.append(None)
        weights.append(None)
        labels.append(None)
        for child in (clusters[i], clusters[j]):
            parents[child] = node
            weights[child] = Fraction(rng.randint(1, max_weight), rng.choice((1, 2, 4)))
        clusters.pop(j)
        clusters[i] = node

    return PhyloTree(parents, weights, labels)
