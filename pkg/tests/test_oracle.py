import itertools
from fractions import Fraction

import pytest

from treecode import oracle
from treecode.trees import TypeVector, is_valid, type_of


@pytest.mark.parametrize("n,count", [(1, 1), (2, 2), (3, 9), (4, 64)])
def test_enumerate_rooted_counts(n, count):
    trees = list(oracle.enumerate_rooted(n))
    assert len(trees) == len(set(trees)) == count == oracle.count_rooted(n)
    assert all(is_valid(t) for t in trees)


def test_count_rooted_5():
    assert oracle.count_rooted(5) == 625


def test_enumerate_rooted_workers_keep_order():
    assert list(oracle.enumerate_rooted(5, workers=2)) == list(oracle.enumerate_rooted(5))


def test_cap_enforced():
    with pytest.raises(oracle.CapExceeded):
        list(oracle.enumerate_rooted(8))


def test_forests():
    assert len(list(oracle.enumerate_forests(3, {1, 2}))) == 2
    assert len(list(oracle.enumerate_forests(4, {1, 2, 3, 4}))) == 1
    restricted = {t for t in oracle.enumerate_rooted(4) if t.root == 1}
    forests = list(oracle.enumerate_forests(4, {1}))
    assert len(forests) == 16 == len(restricted)
    assert {tuple(f.parent) for f in forests} == {t.parent for t in restricted}


@pytest.mark.parametrize("n", range(1, 7))
def test_forest_counts_all_root_sets(n):
    for s in range(1, n + 1):
        for S in itertools.combinations(range(1, n + 1), s):
            assert sum(1 for _ in oracle.enumerate_forests(n, S)) == oracle.count_forests(n, s)


@pytest.mark.parametrize("d,count", [((2,), 1), ((1, 1), 2), ((2, 2), 6), ((3, 2), 10)])
def test_degree_tree_counts(d, count):
    trees = list(oracle.enumerate_degree_trees(d))
    assert len(trees) == len(set(trees)) == count == oracle.count_degree(d)
    assert all(is_valid(t) for t in trees)


def test_count_type_examples():
    assert oracle.count_type(TypeVector.from_mapping({0: 2, 2: 1})) == 3
    assert oracle.count_type(TypeVector.from_mapping({0: 1, 1: 2})) == 6


@pytest.mark.parametrize("n", range(1, 6))
def test_type_histogram_matches_formula(n):
    hist = oracle.type_histogram(n)
    assert set(hist) == set(oracle.all_types(n))
    assert all(oracle.count_type(t) == c for t, c in hist.items())
    assert sum(hist.values()) == n ** (n - 1)


def test_exact_laws_small():
    assert oracle.exact_leaf_depth_distribution(2) == {1: 1}
    assert oracle.exact_leaf_depth_distribution(3) == {1: Fraction(1, 3), 2: Fraction(2, 3)}
    assert oracle.exact_vertex_depth_distribution(2) == {0: Fraction(1, 2), 1: Fraction(1, 2)}
    assert oracle.exact_height_distribution(3) == {1: Fraction(1, 3), 2: Fraction(2, 3)}


def test_multiset_permutations():
    perms = list(oracle.multiset_permutations((1, 1, 2)))
    assert sorted(perms) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]


def test_degree_code_space_size():
    assert sum(1 for _ in oracle.degree_code_space((2, 2))) == 6


def test_oracle_does_not_import_bijections():
    import ast

    import treecode.oracle as mod

    tree = ast.parse(open(mod.__file__).read())
    imported = {node.module for node in ast.walk(tree) if isinstance(node, ast.ImportFrom)}
    assert imported & {"bijection", "growth", "sampling", "statistics"} == set()
