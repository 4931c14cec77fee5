from fractions import Fraction
from itertools import combinations
from math import comb

import pytest

from dissimilarity.metric import four_point_violations, pairwise_distances
from dissimilarity.vectors import dissimilarity_vector
from trees.generator import random_phylogenetic
from tropical.plucker import (
    ThreeTermRelation,
    check_prevariety,
    plucker_prevariety_check,
    three_term_relations,
)
from tropical.polynomial import TropicalPoint, hypersurface_member


def point_of(tree, m):
    return TropicalPoint.from_dissimilarity(dissimilarity_vector(tree, m))


@pytest.mark.parametrize('m, n, count', [(2, 4, 1), (2, 5, 5), (3, 6, 30), (2, 3, 0), (4, 5, 0)])
def test_relation_counts(m, n, count):
    relations = three_term_relations(m, n)
    assert len(relations) == count
    assert count == (comb(n, m - 2) * comb(n - m + 2, 4) if n >= m + 2 else 0)


def test_relations_are_lexicographic():
    relations = three_term_relations(3, 7)
    keys = [relation.sort_key() for relation in relations]
    assert keys == sorted(keys)
    assert relations[0] == ThreeTermRelation((1,), (2, 3, 4, 5))


@pytest.mark.parametrize('m, n', [(1, 4), (5, 4), (0, 0)])
def test_relation_parameter_range(m, n):
    with pytest.raises(ValueError):
        three_term_relations(m, n)


def test_relation_terms():
    relation = ThreeTermRelation((2,), (1, 3, 4, 5))
    assert relation.term_subsets() == [
        ((1, 2, 3), (2, 4, 5)),
        ((1, 2, 4), (2, 3, 5)),
        ((1, 2, 5), (2, 3, 4)),
    ]


def test_relation_rejects_overlap():
    with pytest.raises(ValueError):
        ThreeTermRelation((1,), (1, 2, 3, 4))


def test_bal4_negated_passes(bal4):
    x = point_of(bal4, 2)
    assert x.negated().values() == [-2, -4, -4, -4, -4, -2]
    assert plucker_prevariety_check(x, 'negated') == []


def test_tie_at_minimum_is_no_violation():
    x = TropicalPoint.from_values(4, 2, [0, 0, 0, 0, 0, 1])
    assert plucker_prevariety_check(x) == []


def test_single_minimum_is_a_violation():
    x = TropicalPoint.from_values(4, 2, [0, 1, 2, 2, 1, 3])
    violations = plucker_prevariety_check(x, 'as-given')
    assert [v.to_dict() for v in violations] == [
        {'S': [], 'quad': [1, 2, 3, 4], 'terms': ['3', '2', '4'], 'argmin_count': 1}
    ]


@pytest.mark.parametrize('m', [2, 3, 4, 5])
def test_fig1_negated_has_no_violations(fig1, m):
    report = check_prevariety(point_of(fig1, m), 'negated')
    assert report.ok
    assert report.relations_checked == comb(10, m - 2) * comb(12 - m, 4)


def test_unknown_sign(bal4):
    with pytest.raises(ValueError):
        check_prevariety(point_of(bal4, 2), 'flipped')


def test_violations_are_sorted():
    values = [Fraction(v) for v in (5, 0, 3, 7, 1, 2, 9, 4, 6, 8)]
    x = TropicalPoint.from_values(5, 2, values)
    violations = plucker_prevariety_check(x)
    keys = [v.relation.sort_key() for v in violations]
    assert keys == sorted(keys)


@pytest.mark.parametrize('seed', range(6))
def test_m2_matches_four_point_condition(seed):
    tree = random_phylogenetic(6, seed)
    x = point_of(tree, 2).negated()
    for relation in three_term_relations(2, 6):
        assert hypersurface_member(relation.polynomial(), x)
    assert four_point_violations(pairwise_distances(tree)) == []


@pytest.mark.parametrize('seed', range(4))
def test_random_trees_all_m(seed):
    tree = random_phylogenetic(6 + seed % 2, 50 + seed)
    for m in range(2, tree.n + 1):
        assert plucker_prevariety_check(point_of(tree, m), 'negated') == []


def test_as_given_sign_checks_every_quadruple(fig1):
    report = check_prevariety(point_of(fig1, 2), 'as-given')
    assert report.relations_checked == comb(10, 4)
    assert all(v.argmin_count == 1 for v in report.violations)


def test_relations_cover_every_quadruple():
    quads = {relation.quad for relation in three_term_relations(2, 6)}
    assert quads == set(combinations(range(1, 7), 4))
