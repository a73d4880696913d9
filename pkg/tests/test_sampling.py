import itertools
from collections import Counter

import numpy as np
import pytest

from treecode import oracle
from treecode.bijection import encode_rooted
from treecode.rng import make_rng, run_streams, split_counts
from treecode.sampling import (
    CoveringMove,
    coupled_chain_sequences,
    coupled_cover_sequences,
    sample_constrained_sequence,
    sample_coupled_cover,
    sample_uniform_degree,
    sample_uniform_forest,
    sample_uniform_marked,
    sample_uniform_rooted,
    sample_uniform_type,
    sample_uniform_unrooted,
)
from treecode.statistics import chi_square_uniform, first_repeat_index
from treecode.trees import RootedTree, TreeValidationError, TypeVector, depth, height, is_valid, leaves, type_of

ALPHA = 1e-3


def draws(fn, k, seed=99):
    rng = np.random.default_rng(seed)
    return Counter(fn(rng) for _ in range(k))


def test_rooted_n1_is_unique(rng):
    assert sample_uniform_rooted(1, rng) == RootedTree(1, 1, (0,))


def test_rooted_n2_balanced():
    counts = draws(lambda r: sample_uniform_rooted(2, r), 10_000)
    assert len(counts) == 2
    sigma = (10_000 * 0.25) ** 0.5
    assert all(abs(c - 5000) < 3 * sigma for c in counts.values())


@pytest.mark.parametrize("n", [3, 4])
def test_rooted_uniform_against_enumeration(n):
    counts = draws(lambda r: sample_uniform_rooted(n, r), 200 * n ** (n - 1))
    assert chi_square_uniform(counts, list(oracle.enumerate_rooted(n)))[1] > ALPHA


def test_unrooted_uniform():
    counts = draws(lambda r: sample_uniform_unrooted(4, r), 3200)
    assert chi_square_uniform(counts, list(oracle.enumerate_unrooted(4)))[1] > ALPHA


def test_marked_uniform():
    counts = draws(lambda r: sample_uniform_marked(3, 1, r), 200 * 27)
    assert len(counts) == 27
    assert chi_square_uniform(counts, list(counts))[1] > ALPHA


def test_constrained_sequence_star_is_constant(rng):
    t = TypeVector.from_mapping({0: 4, 4: 1})
    for _ in range(20):
        v = sample_constrained_sequence(t, rng)
        assert len(set(v)) == 1 and len(v) == 4


def test_constrained_sequence_path_type():
    t = TypeVector.from_mapping({0: 1, 1: 2})
    counts = draws(lambda r: sample_constrained_sequence(t, r), 6000)
    cats = [p for p in itertools.permutations(range(1, 4), 2)]
    assert set(counts) == set(cats)
    assert chi_square_uniform(counts, cats)[1] > ALPHA


def test_constrained_sequence_trivial(rng):
    assert sample_constrained_sequence(TypeVector.from_mapping({0: 1}), rng) == ()


def test_constrained_sequence_has_requested_multiplicities(rng):
    t = TypeVector.from_mapping({0: 15, 1: 24, 2: 10, 5: 1})
    for _ in range(20):
        mult = Counter(Counter(sample_constrained_sequence(t, rng)).values())
        assert mult == Counter({1: 24, 2: 10, 5: 1})


@pytest.mark.parametrize("mapping", [{0: 2, 2: 1}, {0: 1, 1: 2}, {0: 3, 1: 1, 3: 1}])
def test_type_sampler_uniform(mapping):
    t = TypeVector.from_mapping(mapping)
    support = [x for x in oracle.enumerate_rooted(t.n) if type_of(x) == t]
    counts = draws(lambda r: sample_uniform_type(t, r), 200 * len(support))
    assert set(counts) == set(support)
    assert chi_square_uniform(counts, support)[1] > ALPHA


def test_invalid_type_rejected(rng):
    with pytest.raises(TreeValidationError):
        sample_uniform_type(TypeVector.from_mapping({0: 1, 2: 1}), rng)


def test_forest_sampler():
    counts = draws(lambda r: sample_uniform_forest(3, {1, 2}, r), 4000)
    assert set(counts) == set(oracle.enumerate_forests(3, {1, 2}))
    assert chi_square_uniform(counts, list(counts))[1] > ALPHA
    assert len(draws(lambda r: sample_uniform_forest(3, {1, 2, 3}, r), 10)) == 1


def test_forest_single_root_matches_rooted_law():
    forests = draws(lambda r: sample_uniform_forest(4, {1}, r), 3200)
    assert len(forests) == 16
    assert chi_square_uniform(forests, list(oracle.enumerate_forests(4, {1})))[1] > ALPHA


@pytest.mark.parametrize("d", [(1,), (1, 1), (2, 2)])
def test_degree_sampler_uniform(d):
    support = list(oracle.enumerate_degree_trees(d))
    counts = draws(lambda r: sample_uniform_degree(d, r), 300 * len(support))
    assert set(counts) == set(support)
    assert chi_square_uniform(counts, support)[1] > ALPHA


def test_covering_move_apply():
    t = TypeVector.from_mapping({0: 2, 2: 1})
    assert CoveringMove(1, 1).apply(t) == TypeVector.from_mapping({0: 1, 1: 2})
    with pytest.raises(TreeValidationError):
        CoveringMove(1, 2).apply(t)
    with pytest.raises(ValueError):
        CoveringMove(0, 2)


def test_coupled_star_and_path(rng):
    t = TypeVector.from_mapping({0: 2, 2: 1})
    for _ in range(200):
        star, path = sample_coupled_cover(t, CoveringMove(1, 1), rng)
        assert type_of(star) == t and height(path) == 2
        assert depth(star, leaves(star)[0]) <= depth(path, leaves(path)[0])


def test_coupling_monotone_first_repeat(rng):
    t = TypeVector.from_mapping({0: 11, 1: 5, 3: 5})
    move = CoveringMove(1, 2)
    for _ in range(500):
        vn, vm = coupled_cover_sequences(t, move, rng)
        i_n = first_repeat_index(vn) or len(vn) + 1
        i_m = first_repeat_index(vm) or len(vm) + 1
        assert i_n <= i_m
        assert Counter(Counter(vm).values()) == Counter(
            {c: k for c, k in move.apply(t).as_dict().items() if c}
        )


def test_coupled_chain(rng):
    t = TypeVector.from_mapping({0: 5, 4: 1, 2: 1, 1: 1})
    seqs = coupled_chain_sequences(t, [CoveringMove(2, 2), CoveringMove(1, 1)], rng)
    assert len(seqs) == 3
    firsts = [first_repeat_index(s) or len(s) + 1 for s in seqs]
    assert firsts == sorted(firsts)


def test_same_seed_same_stream():
    a = [encode_rooted(sample_uniform_rooted(20, make_rng(5, 2))) for _ in range(3)]
    b = [encode_rooted(sample_uniform_rooted(20, make_rng(5, 2))) for _ in range(3)]
    assert a == b
    assert encode_rooted(sample_uniform_rooted(20, make_rng(5, 3))) != a[0]


def test_env_seed(monkeypatch):
    monkeypatch.setenv("TREECODE_SEED", "41")
    x = make_rng().integers(1 << 30)
    assert x == make_rng(41).integers(1 << 30)


def _draw(size, rng, n):
    return rng.integers(0, n, size=size)


def test_split_counts():
    assert split_counts(10, 3) == [4, 3, 3]
    assert sum(split_counts(7, 7)) == 7


def test_run_streams_reproducible_per_worker_count():
    one = run_streams(_draw, 1000, 3, workers=2, args=(50,))
    two = run_streams(_draw, 1000, 3, workers=2, args=(50,))
    assert len(one) == 2
    assert all(np.array_equal(x, y) for x, y in zip(one, two))
    assert sum(len(x) for x in one) == 1000


def test_samples_valid(rng):
    for n in (1, 2, 7, 40):
        assert is_valid(sample_uniform_rooted(n, rng))
