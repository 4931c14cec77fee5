"""
Generic coefficients a_j(e), realized as seeded random nonzero integers.

For a fixed tree the cancellations that could spoil the valuation form a
proper algebraic subset, so a trial with coefficients drawn uniformly from
[-2^31, 2^31] \\ {0} fails with probability at most about n! * 2^-31
(Schwartz-Zippel); `verify` reseeds and retries on failure.
"""

import hashlib
import random
from typing import Dict, Iterator, Tuple
import logging

from trees.models import UltrametricTree

logger = logging.getLogger(__name__)

DEFAULT_COEFFICIENT_BITS = 31


class CoefficientTable:
    """a_j(e) for every edge e (keyed by its child node) and j in 1..n-2."""

    def __init__(self, n: int, seed: int, values: Dict[Tuple[int, int], int]):
        if any(v == 0 for v in values.values()):
            raise ValueError("Generic coefficients must be nonzero")
        self.n = n
        self.seed = seed
        self._values = dict(values)

    def __call__(self, edge: int, j: int) -> int:
        """a_j(e) for the edge above node `edge`."""
        return self._values[(edge, j)]

    def __len__(self):
        return len(self._values)

    def __iter__(self) -> Iterator[Tuple[int, int]]:
        return iter(self._values)

    def values(self):
        return list(self._values.values())

    def __eq__(self, other):
        if not isinstance(other, CoefficientTable):
            return NotImplemented
        return self._values == other._values


def sample_coefficients(tree: UltrametricTree, seed: int,
                        bits: int = DEFAULT_COEFFICIENT_BITS) -> CoefficientTable:
    """Draw a_j(e) uniformly from [-2^bits, 2^bits] \\ {0}, reproducibly from seed."""
    rng = random.Random(seed)
    bound = 1 << bits
    values = {}
    for _, child, _ in tree.edges():
        for j in range(1, tree.n - 1):
            value = 0
            while value == 0:
                value = rng.randint(-bound, bound)
            values[(child, j)] = value
    return CoefficientTable(tree.n, seed, values)


def derive_seed(seed: int, attempt: int) -> int:
    """Seed for resampling attempt k (attempt 0 is the seed itself), 64-bit."""
    if attempt == 0:
        return seed
    digest = hashlib.sha256(f"{seed}:{attempt}".encode('utf-8')).digest()
    return int.from_bytes(digest[:8], 'big')
