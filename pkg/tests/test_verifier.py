from fractions import Fraction

import pytest

from puiseux.reduction import apply_reduction, validate_reduction
from trees.generator import random_ultrametric
from trees.models import TreeError
from trees.newick import parse_newick
from trees.ultrametric import internal_node_order
from verifier.claims import check_reduced_claims, height_sum_identity
from verifier.coefficients import derive_seed, sample_coefficients
from verifier.construction import (
    HypothesisError,
    LeafAssignment,
    build_matrix,
    construct_alpha,
    reduction_from_alpha,
    validate_assignment,
)
from verifier.verify import verify

from conftest import FIG1_ALPHA, FIG1_REDUCTION


def test_coefficients_are_deterministic_and_nonzero(fig1):
    table = sample_coefficients(fig1, 7)
    assert table == sample_coefficients(fig1, 7)
    assert table != sample_coefficients(fig1, 8)
    assert len(table) == 2 * (10 - 1) * (10 - 2)
    assert all(value != 0 and abs(value) <= 2 ** 31 for value in table.values())


def test_derive_seed():
    assert derive_seed(42, 0) == 42
    assert derive_seed(42, 1) == derive_seed(42, 1)
    assert derive_seed(42, 1) != derive_seed(42, 2)
    assert 0 <= derive_seed(42, 3) < 2 ** 64


def test_fig1_matrix_shape(fig1):
    matrix = build_matrix(fig1, sample_coefficients(fig1, 0))
    assert (matrix.n_rows, matrix.n_cols) == (10, 10)
    assert all(entry == 1 for entry in matrix.row(0))
    assert matrix[1, 9].exponents() == (-9, -4)
    assert matrix[1, 3].exponents() == (-9, -4, -2, -1)
    assert matrix[2, 3] == matrix[1, 3] * matrix[1, 3]


def test_bal4_matrix_entries(bal4):
    matrix = build_matrix(bal4, sample_coefficients(bal4, 3))
    assert matrix[1, 0].exponents() == (-2, -1)
    assert matrix[2, 0].exponents() == (-4, -3, -2)


def test_build_matrix_needs_four_leaves():
    tree = parse_newick("((1:1,2:1):1,3:2);")
    with pytest.raises(HypothesisError):
        build_matrix(tree, sample_coefficients(tree, 0))


def test_construct_alpha_fig1(fig1):
    assignment = construct_alpha(fig1)
    assert list(assignment.alpha) == FIG1_ALPHA
    assert list(assignment.b) == [2, 5, 7, 9, 5, 9, 5, 10, 10]
    assert reduction_from_alpha(assignment) == FIG1_REDUCTION
    assert validate_assignment(fig1, assignment)


def test_fixed_fig1_alpha_is_valid(fig1):
    pairs = list(zip(internal_node_order(fig1), FIG1_ALPHA))
    assignment = LeafAssignment.from_alpha(fig1, pairs)
    assert validate_assignment(fig1, assignment)
    assert list(assignment.heights) == [1, 1, 1, 1, 2, 3, 4, 4, 9]


def test_alpha_outside_subtree_is_invalid(fig1):
    alpha = [3] + FIG1_ALPHA[1:]
    pairs = list(zip(internal_node_order(fig1), alpha))
    assert not validate_assignment(fig1, LeafAssignment.from_alpha(fig1, pairs))


def test_order_condition_is_checked(fig1):
    order = internal_node_order(fig1)
    swapped = [order[-1]] + order[:-1]
    pairs = list(zip(swapped, [5] + FIG1_ALPHA[:-1]))
    assert not validate_assignment(fig1, LeafAssignment.from_alpha(fig1, pairs))


def test_bal4_alpha(bal4):
    assignment = construct_alpha(bal4)
    assert list(assignment.alpha) == [1, 3, 2]
    assert len(reduction_from_alpha(assignment)) == 3
    assert validate_reduction(list(reduction_from_alpha(assignment)), 4)


def test_fig1_reduced_second_row(fig1):
    matrix = build_matrix(fig1, sample_coefficients(fig1, 0))
    reduced = apply_reduction(matrix, FIG1_REDUCTION)
    assert [reduced[1, j].valuation() for j in range(10)] == [-1, -4, -2, -1, -9, -1, -3, -1, -4, -9]
    assert reduced[2, 4].valuation() == -18


@pytest.mark.parametrize('fixture', ['bal4', 'fig1'])
def test_reduced_claims_hold(fixture, request):
    tree = request.getfixturevalue(fixture)
    assignment = construct_alpha(tree)
    for seed in range(3):
        matrix = build_matrix(tree, sample_coefficients(tree, seed))
        claims = check_reduced_claims(apply_reduction(matrix, reduction_from_alpha(assignment)),
                                      assignment, tree.depth)
        assert claims.all_ok, claims.failures


def test_height_sum_identity(fig1, bal4, cherry):
    assert tuple(height_sum_identity(fig1)) == (26, 26, True)
    assert tuple(height_sum_identity(bal4)) == (4, 4, True)
    assert tuple(height_sum_identity(cherry)) == (1, 1, True)


@pytest.mark.parametrize('seed', range(10))
def test_verify_fig1(fig1, seed):
    report = verify(fig1, seed=seed)
    assert report.valuation == -35
    assert report.verdict
    assert report.ok
    assert report.resamples == 0


def test_verify_bal4(bal4):
    report = verify(bal4, seed=4)
    assert report.valuation == -6
    assert report.to_dict() == {
        'n': 4,
        'd': '2',
        'D': '6',
        'valuation': '-6',
        'verdict': True,
        'height_sum_ok': True,
        'claims': {'c1': True, 'c2': True, 'c3': True, 'c4': True},
        'seed': 4,
        'resamples': 0,
    }


@pytest.mark.parametrize('seed', range(5))
def test_verify_random_tree(seed):
    tree = random_ultrametric(7, 5, seed)
    report = verify(tree, seed=seed + 100)
    assert report.valuation == -tree.total_weight()
    assert report.tropical_bound <= report.valuation


def test_verify_rational_weights():
    tree = random_ultrametric(6, Fraction(7, 8), 3)
    assert verify(tree).verdict


def test_verify_rejects_small_and_invalid_trees(cherry):
    with pytest.raises(HypothesisError):
        verify(cherry)
    with pytest.raises(TreeError):
        verify(parse_newick("((1:1,2:2):1,(3:1,4:1):1);"))
    with pytest.raises(ValueError):
        verify(parse_newick("((1:1,2:1):1,(3:1,4:1):1);"), max_resamples=-1)


def test_tiny_coefficients_keep_report_consistent(fig1):
    # +-1 coefficients are far from generic; the report must still be honest
    report = verify(fig1, seed=1, max_resamples=2, coefficient_bits=0)
    assert report.verdict == (report.valuation == -35)
    assert 0 <= report.resamples <= 2


def test_tropical_bound_is_recorded(fig1):
    report = verify(fig1, seed=3)
    assert report.tropical_bound <= -35
    assert report.bound_tight == (report.tropical_bound == -35)
