"""
Ultrametric tree checks, node heights and the tree order.
"""

import heapq
from fractions import Fraction
from typing import Dict, List
import logging

from .models import Tree, UltrametricTree

logger = logging.getLogger(__name__)


def as_ultrametric(tree: Tree) -> UltrametricTree:
    """Return tree as an UltrametricTree, checking the invariants if needed."""
    if isinstance(tree, UltrametricTree):
        return tree
    return UltrametricTree.from_tree(tree)


def validate_ultrametric(tree: Tree) -> Fraction:
    """Check the three ultrametric-tree invariants.

    Args:
        tree: Rooted tree with nonnegative weights

    Returns:
        The depth d of the d-equidistant tree

    Raises:
        NotBinaryError: If the root or an internal node does not have two children
        NotEquidistantError: If two leaves lie at different root distances
        ZeroLeafDistanceError: If two leaves are at path weight 0
    """
    return as_ultrametric(tree).depth


def node_heights(tree: Tree) -> Dict[int, Fraction]:
    """NodeHeight table: node id -> weight down to any leaf below it."""
    ultrametric = as_ultrametric(tree)
    return {node: ultrametric.height(node) for node in ultrametric.preorder()}


def total_weight(tree: Tree) -> Fraction:
    return tree.total_weight()


def tree_order_leq(tree: Tree, u: int, w: int) -> bool:
    """u <=_T w: u lies on the path from the root to w."""
    return tree.is_ancestor(u, w)


def internal_node_order(tree: Tree) -> List[int]:
    """Number the internal nodes v_1..v_{n-1} so that v_i <=_T v_j implies j <= i.

    Nodes are released bottom-up once all their internal children are placed,
    always taking the ready node with the smallest (height, smallest leaf label).
    With strictly decreasing heights along root-leaf paths this is just the
    sort by that key; zero-weight internal edges cannot break the order
    condition because a parent is never ready before its children.

    Returns:
        Internal node ids, the root last
    """
    ultrametric = as_ultrametric(tree)
    pending = {}
    ready = []
    for node in ultrametric.internal_nodes():
        waiting = sum(1 for c in ultrametric.children(node) if not ultrametric.is_leaf(c))
        pending[node] = waiting
        if waiting == 0:
            heapq.heappush(ready, _order_key(ultrametric, node))

    order = []
    while ready:
        _, _, node = heapq.heappop(ready)
        order.append(node)
        parent = ultrametric.parent(node)
        if parent is not None:
            pending[parent] -= 1
            if pending[parent] == 0:
                heapq.heappush(ready, _order_key(ultrametric, parent))

    logger.debug(f"Internal node order: {order}")
    return order


def _order_key(tree: UltrametricTree, node: int):
    return (tree.height(node), tree.min_label(node), node)
