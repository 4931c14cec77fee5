"""
Tree data model: rooted leaf-labelled trees with exact edge weights.
Phylogenetic and ultrametric trees are specializations of the same structure.
"""

from collections import Counter
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple
import logging

logger = logging.getLogger(__name__)


class TreeError(ValueError):
    """Raised when a tree violates a structural invariant."""


class LabelError(TreeError):
    """Leaf labels are not exactly {1..n}, or an internal node carries a label."""


class NotBinaryError(TreeError):
    """Root without exactly two children, or an internal node without exactly two children."""


class NotEquidistantError(TreeError):
    """Two leaves sit at different root distances."""

    def __init__(self, message: str, leaves: Tuple[int, int]):
        super().__init__(message)
        self.leaves = leaves


class ZeroLeafDistanceError(TreeError):
    """Two distinct leaves are joined by a path of total weight 0."""

    def __init__(self, message: str, leaves: Tuple[int, int]):
        super().__init__(message)
        self.leaves = leaves


class Tree:
    """Rooted, leaf-labelled tree with nonnegative exact edge weights.

    Nodes are integer ids 0..node_count-1. Each non-root node stores the weight
    of the edge to its parent, so an edge is identified by its child node.
    Instances are immutable after construction.
    """

    def __init__(self,
                 parents: Sequence[Optional[int]],
                 weights: Sequence[Optional[Fraction]],
                 labels: Sequence[Optional[int]]):
        """Build and check a tree.

        Args:
            parents: parents[v] is the parent of node v, None for the root
            weights: weights[v] is the weight of the edge above v (None for the root)
            labels: labels[v] is the leaf label of v, None for internal nodes

        Raises:
            TreeError: If the arrays do not describe a connected rooted tree
                with nonnegative weights and leaf labels exactly {1..n}
        """
        if not (len(parents) == len(weights) == len(labels)):
            raise TreeError("parents, weights and labels must have equal length")

        node_count = len(parents)
        roots = [v for v, p in enumerate(parents) if p is None]
        if len(roots) != 1:
            raise TreeError(f"Expected exactly one root, found {len(roots)}")
        self._root = roots[0]

        children: List[List[int]] = [[] for _ in range(node_count)]
        for node, parent in enumerate(parents):
            if parent is None:
                continue
            if not 0 <= parent < node_count or parent == node:
                raise TreeError(f"Node {node} has invalid parent {parent}")
            children[parent].append(node)

        clean_weights: List[Optional[Fraction]] = [None] * node_count
        for node in range(node_count):
            if node == self._root:
                continue
            weight = weights[node]
            if weight is None:
                raise TreeError(f"Edge above node {node} has no weight")
            weight = Fraction(weight)
            if weight < 0:
                raise TreeError(f"Edge above node {node} has negative weight {weight}")
            clean_weights[node] = weight

        # Preorder walk; anything unreachable from the root sits on a cycle
        preorder = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            preorder.append(node)
            stack.extend(children[node])
        if len(preorder) != node_count:
            raise TreeError("Tree is not connected or contains a cycle")

        for node in range(node_count):
            if children[node] and len(children[node]) < 2:
                raise TreeError(f"Internal node {node} has a single child")

        self._check_labels(children, labels)

        self._parent = tuple(parents)
        self._weight = tuple(clean_weights)
        self._label = tuple(labels)

        # Bottom-up summaries: min leaf label and leaf bitmask per node
        min_label = [0] * node_count
        leaf_mask = [0] * node_count
        for node in reversed(preorder):
            if not children[node]:
                min_label[node] = labels[node]
                leaf_mask[node] = 1 << (labels[node] - 1)
            else:
                min_label[node] = min(min_label[c] for c in children[node])
                mask = 0
                for c in children[node]:
                    mask |= leaf_mask[c]
                leaf_mask[node] = mask
        self._min_label = tuple(min_label)
        self._leaf_mask = tuple(leaf_mask)
        self._children = tuple(
            tuple(sorted(kids, key=lambda c: min_label[c])) for kids in children
        )

        root_distance: List[Fraction] = [Fraction(0)] * node_count
        for node in preorder:
            if node != self._root:
                root_distance[node] = root_distance[parents[node]] + clean_weights[node]
        self._root_distance = tuple(root_distance)

        # Canonical preorder follows the sorted child lists
        canonical = []
        stack = [self._root]
        while stack:
            node = stack.pop()
            canonical.append(node)
            stack.extend(reversed(self._children[node]))
        self._preorder = tuple(canonical)

        self._leaf_of_label: Dict[int, int] = {
            labels[v]: v for v in range(node_count) if not children[v]
        }

    @staticmethod
    def _check_labels(children: List[List[int]], labels: Sequence[Optional[int]]):
        leaf_labels = []
        for node, kids in enumerate(children):
            label = labels[node]
            if kids:
                if label is not None:
                    raise LabelError(f"Internal node {node} carries label {label}")
                continue
            if label is None:
                raise LabelError(f"Leaf node {node} has no label")
            if isinstance(label, bool) or not isinstance(label, int):
                raise LabelError(f"Leaf label {label!r} is not an integer")
            leaf_labels.append(label)

        n = len(leaf_labels)
        if n < 2:
            raise TreeError("A tree needs at least two leaves")
        if len(set(leaf_labels)) != n:
            duplicates = sorted(x for x, count in Counter(leaf_labels).items() if count > 1)
            raise LabelError(f"Duplicate leaf labels: {duplicates}")
        if set(leaf_labels) != set(range(1, n + 1)):
            missing = sorted(set(range(1, n + 1)) - set(leaf_labels))
            raise LabelError(f"Leaf labels must be exactly 1..{n}; missing {missing}")

    @classmethod
    def from_tree(cls, tree: 'Tree') -> 'Tree':
        """Rebuild another tree's structure as an instance of this class."""
        return cls(tree._parent, tree._weight, tree._label)

    # Structure access

    @property
    def root(self) -> int:
        return self._root

    @property
    def n(self) -> int:
        """Number of leaves."""
        return len(self._leaf_of_label)

    @property
    def node_count(self) -> int:
        return len(self._parent)

    def parent(self, node: int) -> Optional[int]:
        return self._parent[node]

    def weight(self, node: int) -> Optional[Fraction]:
        """Weight of the edge above node (None for the root)."""
        return self._weight[node]

    def children(self, node: int) -> Tuple[int, ...]:
        """Children ordered by smallest descendant leaf label."""
        return self._children[node]

    def label(self, node: int) -> Optional[int]:
        return self._label[node]

    def is_leaf(self, node: int) -> bool:
        return not self._children[node]

    def leaf(self, label: int) -> int:
        """Node id of the leaf carrying label."""
        try:
            return self._leaf_of_label[label]
        except KeyError:
            raise LabelError(f"Unknown leaf label {label}") from None

    def leaves(self) -> List[int]:
        """Leaf node ids ordered by label."""
        return [self._leaf_of_label[i] for i in range(1, self.n + 1)]

    def internal_nodes(self) -> List[int]:
        return [v for v in self._preorder if self._children[v]]

    def preorder(self) -> Tuple[int, ...]:
        return self._preorder

    def postorder(self) -> List[int]:
        """Every node after all of its descendants."""
        return list(reversed(self._preorder))

    def edges(self) -> List[Tuple[int, int, Fraction]]:
        """All edges as (parent, child, weight), in canonical preorder of the child."""
        return [(self._parent[v], v, self._weight[v])
                for v in self._preorder if v != self._root]

    def min_label(self, node: int) -> int:
        """Smallest leaf label in the subtree below node."""
        return self._min_label[node]

    def leaf_mask(self, node: int) -> int:
        """Bitmask of leaf labels below node (bit label-1)."""
        return self._leaf_mask[node]

    def leaf_labels_below(self, node: int) -> FrozenSet[int]:
        mask = self._leaf_mask[node]
        return frozenset(i + 1 for i in range(mask.bit_length()) if mask >> i & 1)

    def root_distance(self, node: int) -> Fraction:
        """Total weight of the path from the root down to node."""
        return self._root_distance[node]

    def path_to_root(self, node: int) -> List[int]:
        """Nodes from node up to and including the root."""
        path = [node]
        while self._parent[path[-1]] is not None:
            path.append(self._parent[path[-1]])
        return path

    def is_ancestor(self, u: int, w: int) -> bool:
        """True iff u lies on the root-to-w path (u == w included)."""
        node: Optional[int] = w
        while node is not None:
            if node == u:
                return True
            node = self._parent[node]
        return False

    def lca(self, u: int, w: int) -> int:
        ancestors = set(self.path_to_root(u))
        for node in self.path_to_root(w):
            if node in ancestors:
                return node
        raise TreeError(f"Nodes {u} and {w} share no ancestor")

    def distance(self, u: int, w: int) -> Fraction:
        """Path weight between two nodes."""
        top = self.lca(u, w)
        return self._root_distance[u] + self._root_distance[w] - 2 * self._root_distance[top]

    def total_weight(self) -> Fraction:
        """Sum of all edge weights (D)."""
        return sum((w for w in self._weight if w is not None), Fraction(0))

    def __repr__(self):
        return f"{type(self).__name__}(n={self.n}, D={self.total_weight()})"


class PhyloTree(Tree):
    """Phylogenetic n-tree: leaf labels 1..n and strictly positive edge weights."""

    def __init__(self, parents, weights, labels):
        super().__init__(parents, weights, labels)
        for parent, child, weight in self.edges():
            if weight <= 0:
                raise TreeError(
                    f"Phylogenetic tree edge {parent}->{child} has non-positive weight {weight}"
                )


def _ultrametric_heights(tree: Tree) -> Tuple[Fraction, ...]:
    """Check the ultrametric invariants and return node heights.

    Raises:
        NotBinaryError, NotEquidistantError, ZeroLeafDistanceError
    """
    for node in tree.internal_nodes():
        if len(tree.children(node)) != 2:
            where = 'Root' if node == tree.root else f"Internal node {node}"
            raise NotBinaryError(f"{where} has {len(tree.children(node))} children, expected 2")

    heights: List[Fraction] = [Fraction(0)] * tree.node_count
    for node in tree.postorder():
        kids = tree.children(node)
        if not kids:
            continue
        reach = [heights[c] + tree.weight(c) for c in kids]
        if reach[0] != reach[1]:
            leaves = (tree.min_label(kids[0]), tree.min_label(kids[1]))
            raise NotEquidistantError(
                f"Leaves {leaves[0]} and {leaves[1]} are at different depths "
                f"below node {node} ({reach[0]} vs {reach[1]})",
                leaves
            )
        heights[node] = reach[0]
        if heights[node] == 0:
            leaves = (tree.min_label(kids[0]), tree.min_label(kids[1]))
            raise ZeroLeafDistanceError(
                f"Leaves {leaves[0]} and {leaves[1]} are at distance 0", leaves
            )
    return tuple(heights)


class UltrametricTree(Tree):
    """Binary d-equidistant tree with nonnegative weights and positive leaf distances."""

    def __init__(self, parents, weights, labels):
        super().__init__(parents, weights, labels)
        self._heights = _ultrametric_heights(self)

    @property
    def depth(self) -> Fraction:
        """d: weight of every root-to-leaf path."""
        return self._heights[self.root]

    def height(self, node: int) -> Fraction:
        """Weight from node down to any leaf below it."""
        return self._heights[node]

    def edge_height(self, child: int) -> Fraction:
        """h(e) for the edge above child: the height of its top node."""
        return self._heights[self.parent(child)]
