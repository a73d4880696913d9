import pytest

from conftest import path231, star3
from treecode.trees import (
    DegreeSequence,
    DegreeTree,
    Leaf,
    RootedForest,
    RootedTree,
    TreeValidationError,
    TypeVector,
    UnrootedTree,
    depth,
    discovery_order,
    height,
    is_valid,
    leaves,
    parse_vertex_key,
    path_from_set,
    type_of,
    validate,
    vertex_key,
)


def test_validate_single_vertex():
    validate(RootedTree(1, 1, (0,)))


def test_root_with_parent_rejected():
    with pytest.raises(TreeValidationError):
        validate(RootedTree(2, 1, (2, 1)))


def test_self_loop_names_vertex():
    with pytest.raises(TreeValidationError, match="cycle at vertex 3") as info:
        validate(RootedTree(3, 1, (0, 1, 3)))
    assert info.value.vertex == 3


def test_two_cycle_detected():
    assert not is_valid(RootedTree(4, 1, (0, 1, 4, 3)))


def test_forest_validation():
    validate(RootedForest(3, (1, 2), (0, 0, 1)))
    assert not is_valid(RootedForest(3, (1, 2), (0, 3, 1)))


def test_leaves():
    assert leaves(star3()) == [2, 3]
    assert leaves(path231()) == [1]
    assert leaves(RootedTree(1, 1, (0,))) == []


def test_depth_and_height():
    t = path231()
    assert depth(t, 2) == 0
    assert depth(t, 3) == 1
    assert depth(t, 1) == 2
    assert height(t) == 2
    assert height(star3()) == 1
    assert height(RootedTree(1, 1, (0,))) == 0
    with pytest.raises(KeyError):
        depth(t, 9)


def test_path_from_set():
    assert tuple(path_from_set(star3(), {1}, 3)) == (1, 3)
    assert tuple(path_from_set(path231(), {2}, 1)) == (2, 3, 1)
    assert tuple(path_from_set(star3(), {1, 2}, 2)) == (2,)


def test_path_from_set_requires_connected_set():
    with pytest.raises(TreeValidationError):
        path_from_set(star3(), {2, 3}, 1)


def test_type_of():
    assert type_of(RootedTree(1, 1, (0,))) == TypeVector.from_mapping({0: 1})
    assert type_of(star3()) == TypeVector.from_mapping({0: 2, 2: 1})
    assert type_of(RootedTree.from_parent_map(3, 1, {2: 1, 3: 2})) == TypeVector.from_mapping({0: 1, 1: 2})


def test_type_vector_parse_and_validity():
    t = TypeVector.parse("0:2,2:1")
    assert t.n == 3 and t[2] == 1 and t[5] == 0
    assert str(t) == "0:2,2:1"
    assert not TypeVector.from_mapping({0: 1, 2: 1}).is_valid()


def test_vertex_keys_roundtrip():
    for v in (3, Leaf(5)):
        assert parse_vertex_key(vertex_key(v)) == v
    assert vertex_key(Leaf(5)) == "l5"


def test_degree_sequence_leaf_count():
    d = DegreeSequence((4, 4, 4, 4))
    assert d.m == 4 and d.L == 13 and d.size == 17


def test_discovery_order_quaternary(quaternary):
    expected = [2, Leaf(1), 3, Leaf(2), 4, Leaf(3), 1] + [Leaf(j) for j in range(4, 14)]
    assert discovery_order(quaternary) == expected


def test_discovery_order_small():
    cherry = DegreeTree.from_parent_map((2,), 1, {Leaf(1): 1, Leaf(2): 1})
    assert discovery_order(cherry) == [1, Leaf(1), Leaf(2)]
    assert discovery_order(DegreeTree.from_parent_map((1,), 1, {Leaf(1): 1})) == [1, Leaf(1)]


def test_degree_tree_child_counts_checked():
    with pytest.raises(TreeValidationError):
        validate(DegreeTree.from_parent_map((2,), 1, {Leaf(1): 1, Leaf(2): Leaf(1)}))
    assert not is_valid(DegreeTree.from_parent_map((1, 1), 1, {2: 1, Leaf(1): 1}))


def test_unrooted_tree():
    t = UnrootedTree.from_edges(3, [(1, 2), (2, 3)])
    assert t.degrees() == {1: 1, 2: 2, 3: 1}
    assert t.rooted_at(1).parent == (0, 1, 2)
    assert not is_valid(UnrootedTree.from_edges(3, [(1, 2), (2, 1)]))
