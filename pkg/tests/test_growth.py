import itertools
from collections import Counter

import numpy as np
import pytest

from conftest import QUATERNARY_CODE, QUATERNARY_GROWN_CODE
from treecode import oracle
from treecode.bijection import decode_degree, encode_degree
from treecode.growth import (
    code_for_step,
    decode_modified,
    encode_modified,
    grow_dary_chain,
    grow_step,
    initial_dary,
    insert_new_label,
    multiset_from_indices,
    uniform_multiset,
    unlabel_internal,
)
from treecode.statistics import chi_square_uniform
from treecode.trees import DegreeTree, Leaf, TreeValidationError, discovery_order, is_valid

CHERRY = DegreeTree.from_parent_map((2,), 1, {Leaf(1): 1, Leaf(2): 1})


def test_multiset_from_indices(quaternary):
    assert multiset_from_indices(quaternary, [3, 3, 7, 8]) == [3, 3, 1, Leaf(4)]
    assert multiset_from_indices(quaternary, [1]) == [quaternary.root]
    assert multiset_from_indices(quaternary, [17]) == [discovery_order(quaternary)[-1]]
    with pytest.raises((TreeValidationError, IndexError, ValueError)):
        multiset_from_indices(quaternary, [18])


def test_grow_step_at_root():
    grown = grow_step(CHERRY, [1, 1])
    assert grown == DegreeTree.from_parent_map((2, 2), 2, {1: 2, Leaf(3): 2, Leaf(1): 1, Leaf(2): 1})


def test_grow_step_moves_distinct_vertices():
    grown = grow_step(CHERRY, [Leaf(1), Leaf(2)])
    assert grown == DegreeTree.from_parent_map((2, 2), 1, {2: 1, Leaf(3): 1, Leaf(1): 2, Leaf(2): 2})


def test_grow_step_worked_example(quaternary):
    w = multiset_from_indices(quaternary, [3, 3, 7, 8])
    grown = grow_step(quaternary, w)
    assert is_valid(grown)
    assert code_for_step(quaternary, [3, 3, 7, 8]) == QUATERNARY_GROWN_CODE
    assert insert_new_label(QUATERNARY_CODE, [3, 3, 7, 8], 5) == QUATERNARY_GROWN_CODE
    assert decode_modified(QUATERNARY_GROWN_CODE, (4,) * 5) == grown
    assert encode_modified(grown) == QUATERNARY_GROWN_CODE
    new_leaves = {Leaf(14), Leaf(15), Leaf(16)}
    assert {v for v, p in grown.parent_map().items() if v in new_leaves} == new_leaves


def test_decode_modified_agrees_with_plain_decoder_for_unit_degree():
    assert decode_modified((1, 2), (1, 1)) == decode_degree((1, 2), (1, 1))


def test_encode_modified_single_vertex():
    for d in (1, 2, 3):
        assert encode_modified(initial_dary(d)) == (1,) * d


@pytest.mark.parametrize("d", [(1,), (2,), (1, 2), (2, 2), (3, 2), (2, 1, 2)])
def test_grow_step_equals_modified_decoder_exhaustively(d):
    """Every (tree, multiset) pair: splicing equals decoding the inserted code, exactly."""
    for dnew in (1, 2, 3):
        for t in oracle.enumerate_degree_trees(d):
            size = t.m + t.L
            for idx in itertools.combinations_with_replacement(range(1, size + 1), dnew):
                grown = grow_step(t, multiset_from_indices(t, idx))
                code = code_for_step(t, idx)
                assert decode_modified(code, d + (dnew,)) == grown
                # shape ignoring leaf labels also matches the plain decoder
                assert _unlabeled(decode_degree(code, d + (dnew,))) == _unlabeled(grown)


def _unlabeled(t):
    kids = t.children()

    def form(v):
        if isinstance(v, Leaf):
            return ()
        return tuple(sorted(form(c) for c in kids.get(v, [])))

    return form(t.root)


@pytest.mark.parametrize("d", [(2,), (2, 2), (3, 1), (2, 1, 2)])
def test_modified_roundtrip_exhaustive(d):
    for v in oracle.degree_code_space(d):
        assert encode_modified(decode_modified(v, d)) == v


def test_unlabel_internal_ignores_internal_labels(quaternary):
    perm = {1: 3, 2: 4, 3: 1, 4: 2}
    assert unlabel_internal(quaternary.relabel_internal(perm)) == unlabel_internal(quaternary)
    a = DegreeTree.from_parent_map((2, 2), 1, {2: 1, Leaf(3): 1, Leaf(1): 2, Leaf(2): 2})
    b = DegreeTree.from_parent_map((2, 2), 1, {2: 1, Leaf(1): 1, Leaf(3): 2, Leaf(2): 2})
    assert unlabel_internal(a) != unlabel_internal(b)
    assert unlabel_internal(a) == unlabel_internal(a.relabel_internal({1: 2, 2: 1}))


def test_uniform_multiset_is_uniform(rng):
    counts = Counter(tuple(uniform_multiset(rng, 3, 2)) for _ in range(6000))
    cats = list(itertools.combinations_with_replacement(range(1, 4), 2))
    assert set(counts) == set(cats)
    assert chi_square_uniform(counts, cats)[1] > 1e-3


def test_chain_starts_with_cherry():
    first = next(grow_dary_chain(2, 1, np.random.default_rng(0), labeled=True))
    assert first == initial_dary(2) == CHERRY


def test_chain_d2_m2_uniform_over_three_shapes():
    rng = np.random.default_rng(7)
    counts = Counter(list(grow_dary_chain(2, 2, rng))[-1] for _ in range(10_000))
    shapes = {unlabel_internal(t) for t in oracle.enumerate_degree_trees((2, 2))}
    assert len(shapes) == 3 and set(counts) == shapes
    assert chi_square_uniform(counts, list(shapes))[1] > 1e-3


def test_chain_d3_m2_has_ten_shapes():
    shapes = {unlabel_internal(t) for t in oracle.enumerate_degree_trees((3, 3))}
    assert len(shapes) == 10


def test_labeled_chain_trees_are_valid():
    for t in grow_dary_chain(3, 6, np.random.default_rng(1), labeled=True):
        assert is_valid(t)
        assert encode_degree(t)  # decodable by construction
