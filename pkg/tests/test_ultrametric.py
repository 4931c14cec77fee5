from fractions import Fraction
from itertools import permutations

import pytest

from trees.generator import random_phylogenetic, random_ultrametric
from trees.models import (
    NotBinaryError,
    NotEquidistantError,
    PhyloTree,
    Tree,
    TreeError,
    ZeroLeafDistanceError,
)
from trees.newick import parse_newick, parse_tree
from trees.ultrametric import (
    internal_node_order,
    node_heights,
    total_weight,
    tree_order_leq,
    validate_ultrametric,
)


def _order_condition_holds(tree, order):
    position = {node: i for i, node in enumerate(order)}
    for u, w in permutations(order, 2):
        if tree_order_leq(tree, u, w) and not position[w] <= position[u]:
            return False
    return True


def test_depths(bal4, fig1):
    assert validate_ultrametric(bal4) == 2
    assert validate_ultrametric(fig1) == 9


def test_not_equidistant():
    with pytest.raises(NotEquidistantError) as info:
        validate_ultrametric(parse_tree("((1:2,2:1):1,(3:1,4:1):1);"))
    assert info.value.leaves == (1, 2)


def test_not_binary():
    with pytest.raises(NotBinaryError):
        validate_ultrametric(parse_tree("(1:1,2:1,3:1);"))


def test_zero_leaf_distance():
    with pytest.raises(ZeroLeafDistanceError):
        validate_ultrametric(parse_tree("((1:0,2:0):2,3:2);"))


def test_zero_weight_internal_edge_is_allowed():
    tree = parse_newick("(((1:1,2:1):0,3:1):1,4:2);")
    assert validate_ultrametric(tree) == 2


def test_total_weight(bal4, fig1, cherry):
    assert total_weight(bal4) == 6
    assert total_weight(fig1) == 35
    assert total_weight(cherry) == 2


def test_heights_drop_by_edge_weight(fig1):
    heights = node_heights(fig1)
    for parent, child, weight in fig1.edges():
        assert heights[parent] - heights[child] == weight
    assert all(heights[leaf] == 0 for leaf in fig1.leaves())
    assert heights[fig1.root] == 9


def test_internal_node_order_bal4(bal4):
    order = internal_node_order(bal4)
    assert [bal4.height(v) for v in order] == [1, 1, 2]
    assert [sorted(bal4.leaf_labels_below(v)) for v in order] == [[1, 2], [3, 4], [1, 2, 3, 4]]
    assert order[-1] == bal4.root


def test_internal_node_order_fig1(fig1):
    order = internal_node_order(fig1)
    assert [fig1.height(v) for v in order] == [1, 1, 1, 1, 2, 3, 4, 4, 9]
    assert [fig1.min_label(v) for v in order] == [1, 4, 6, 8, 3, 6, 1, 6, 1]
    assert _order_condition_holds(fig1, order)


def test_internal_node_order_with_equal_heights():
    tree = parse_newick("(((1:1,2:1):0,3:1):1,4:2);")
    order = internal_node_order(tree)
    assert _order_condition_holds(tree, order)
    assert order[-1] == tree.root


@pytest.mark.parametrize('seed', range(25))
def test_internal_node_order_random(seed):
    tree = random_ultrametric(2 + seed % 11, 3, seed)
    order = internal_node_order(tree)
    assert sorted(order) == sorted(tree.internal_nodes())
    assert _order_condition_holds(tree, order)


def test_tree_order_leq(bal4, fig1):
    assert tree_order_leq(bal4, bal4.root, bal4.leaf(3))
    assert not tree_order_leq(bal4, bal4.leaf(1), bal4.leaf(2))
    node = fig1.lca(fig1.leaf(6), fig1.leaf(9))
    assert sorted(fig1.leaf_labels_below(node)) == [6, 7, 8, 9]
    assert tree_order_leq(fig1, node, fig1.leaf(8))
    assert not tree_order_leq(fig1, node, fig1.leaf(10))


def test_random_ultrametric_is_valid_and_deterministic():
    tree = random_ultrametric(4, 2, 11)
    assert validate_ultrametric(tree) == 2
    again = random_ultrametric(4, 2, 11)
    assert again.edges() == tree.edges()


def test_random_ultrametric_rejects_small_n():
    with pytest.raises(ValueError):
        random_ultrametric(1, 2, 0)


@pytest.mark.parametrize('seed', range(10))
def test_random_ultrametric_rational_depth(seed):
    tree = random_ultrametric(10, Fraction(9, 2), seed)
    assert tree.depth == Fraction(9, 2)
    for leaf in tree.leaves():
        assert tree.root_distance(leaf) == Fraction(9, 2)


def test_random_phylogenetic():
    tree = random_phylogenetic(8, 3)
    assert isinstance(tree, PhyloTree)
    assert tree.n == 8
    assert all(weight > 0 for _, _, weight in tree.edges())


def test_tree_rejects_cycles():
    with pytest.raises(TreeError):
        Tree([None, 2, 1, 0, 0], [None, 1, 1, 1, 1], [None, None, None, 1, 2])
