"""
The matrix M of an ultrametric tree, the leaf assignment alpha used to reduce
it, and the column reduction that assignment determines.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple
import logging

from trees.models import UltrametricTree
from trees.ultrametric import internal_node_order
from puiseux.matrix import PuiseuxMatrix
from puiseux.poly import PuiseuxPoly
from puiseux.reduction import ColumnReductionSeq
from .coefficients import CoefficientTable

logger = logging.getLogger(__name__)


class HypothesisError(ValueError):
    """The tree does not meet the hypotheses of the valuation statement (n >= 4)."""


def leaf_sums(tree: UltrametricTree, coeffs: CoefficientTable, j: int) -> List[PuiseuxPoly]:
    """x_i^(j) for i = 1..n: sum of a_j(e) t^(-h(e)) over edges e from the root to leaf i.

    Equal heights along a path (zero-weight edges) merge into one term.
    """
    sums = []
    for leaf in tree.leaves():
        terms = {}
        for node in tree.path_to_root(leaf)[:-1]:
            exponent = -tree.edge_height(node)
            terms[exponent] = terms.get(exponent, 0) + coeffs(node, j)
        sums.append(PuiseuxPoly(terms))
    return sums


def build_matrix(tree: UltrametricTree, coeffs: CoefficientTable) -> PuiseuxMatrix:
    """Build the n x n matrix M.

    Row 1 is all ones, row 2 holds x_i^(1), row 3 holds (x_i^(1))^2 and rows
    4..n hold x_i^(2)..x_i^(n-2).

    Raises:
        HypothesisError: If the tree has fewer than 4 leaves
    """
    n = tree.n
    if n < 4:
        raise HypothesisError(f"The matrix needs n >= 4 leaves, got {n}")

    first = leaf_sums(tree, coeffs, 1)
    rows = [[PuiseuxPoly.one()] * n, first, [x * x for x in first]]
    for j in range(2, n - 1):
        rows.append(leaf_sums(tree, coeffs, j))
    return PuiseuxMatrix(rows)


class LeafAssignment:
    """Ordered internal nodes v_1..v_{n-1} with alpha(v_i) = a_i and the leaves b_i.

    Leaves are given by label. b_i is None when no unique leaf qualifies,
    which only happens for an invalid alpha.
    """

    def __init__(self, nodes: Sequence[int], alpha: Sequence[int],
                 b: Sequence[Optional[int]], heights: Sequence[Fraction]):
        if not (len(nodes) == len(alpha) == len(b) == len(heights)):
            raise ValueError("nodes, alpha, b and heights must have equal length")
        self.nodes = tuple(nodes)
        self.alpha = tuple(alpha)
        self.b = tuple(b)
        self.heights = tuple(heights)

    @classmethod
    def from_alpha(cls, tree: UltrametricTree, pairs: Sequence[Tuple[int, int]]) -> 'LeafAssignment':
        """Build from explicit (internal node, leaf label) pairs, deriving each b_i."""
        nodes = [node for node, _ in pairs]
        alpha = [leaf for _, leaf in pairs]
        b = []
        for i, node in enumerate(nodes):
            remaining = tree.leaf_labels_below(node) - set(alpha[:i + 1])
            b.append(next(iter(remaining)) if len(remaining) == 1 else None)
        return cls(nodes, alpha, b, [tree.height(node) for node in nodes])

    def __len__(self):
        return len(self.nodes)

    def pairs(self) -> List[Tuple[int, int]]:
        return list(zip(self.nodes, self.alpha))

    def __repr__(self):
        return f"LeafAssignment(alpha={list(self.alpha)}, b={list(self.b)})"


def construct_alpha(tree: UltrametricTree) -> LeafAssignment:
    """Sweep v_1..v_{n-1}, giving each node the smaller of its two free leaves.

    Below v_i exactly two leaves are not yet assigned (one per child subtree);
    the other one becomes b_i.
    """
    nodes = internal_node_order(tree)
    assigned = set()
    alpha = []
    b = []
    for node in nodes:
        free = sorted(tree.leaf_labels_below(node) - assigned)
        if len(free) != 2:
            raise RuntimeError(f"Node {node} has {len(free)} free leaves, expected 2")
        alpha.append(free[0])
        b.append(free[1])
        assigned.add(free[0])
    assignment = LeafAssignment(nodes, alpha, b, [tree.height(node) for node in nodes])
    logger.debug(f"Constructed {assignment!r}")
    return assignment


def assignment_problems(tree: UltrametricTree, assignment: LeafAssignment) -> List[str]:
    """Everything wrong with an assignment; empty when valid."""
    problems = []
    internal = set(tree.internal_nodes())
    nodes = assignment.nodes
    if sorted(nodes) != sorted(internal):
        problems.append("nodes are not exactly the internal nodes")
        return problems

    for i, u in enumerate(nodes):
        for j, w in enumerate(nodes):
            if u != w and tree.is_ancestor(u, w) and not j <= i:
                problems.append(f"v_{i + 1} <=_T v_{j + 1} but {j + 1} > {i + 1}")

    if len(set(assignment.alpha)) != len(assignment.alpha):
        problems.append("alpha is not injective")

    for i, (node, leaf) in enumerate(zip(nodes, assignment.alpha), start=1):
        if leaf not in range(1, tree.n + 1) or not tree.is_ancestor(node, tree.leaf(leaf)):
            problems.append(f"a_{i} = {leaf} is not below v_{i}")
            continue
        remaining = tree.leaf_labels_below(node) - set(assignment.alpha[:i])
        if len(remaining) != 1:
            problems.append(f"no unique b_{i}: candidates {sorted(remaining)}")
        elif assignment.b[i - 1] != next(iter(remaining)):
            problems.append(f"b_{i} = {assignment.b[i - 1]}, expected {next(iter(remaining))}")
    return problems


def validate_assignment(tree: UltrametricTree, assignment: LeafAssignment) -> bool:
    problems = assignment_problems(tree, assignment)
    for problem in problems:
        logger.debug(f"Invalid assignment: {problem}")
    return not problems


def reduction_from_alpha(assignment: LeafAssignment) -> ColumnReductionSeq:
    """[(a_1,b_1),...,(a_{n-1},b_{n-1})] in application order."""
    if any(b is None for b in assignment.b):
        raise ValueError(f"Assignment has no b for some node: {assignment!r}")
    return ColumnReductionSeq(len(assignment) + 1, zip(assignment.alpha, assignment.b))
