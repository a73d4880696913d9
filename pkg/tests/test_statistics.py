import math
from fractions import Fraction

import numpy as np
import pytest

from treecode import oracle
from treecode.statistics import (
    EmpiricalDist,
    Family,
    Pmf,
    chi_square_gof,
    compare_depth_modes,
    dominance_report,
    empirical_leaf_depth,
    first_repeat_index,
    height_histogram,
    joint_leaf_depths,
    pmf_min_repeat,
    pmf_uniform_vertex_depth,
    rayleigh_cdf,
    rayleigh_ks,
    rayleigh_sf,
    sample_first_repeat,
    vertex_depth_samples,
)
from treecode.trees import TypeVector

ALPHA = 1e-3


def test_first_repeat_index():
    assert first_repeat_index((1, 1, 5)) == 2
    assert first_repeat_index((1, 2, 2)) == 3
    assert first_repeat_index((1, 2, 3)) is None


def test_pmf_min_repeat_small():
    assert pmf_min_repeat(2).as_dict() == {2: 1}
    assert pmf_min_repeat(3).as_dict() == {2: Fraction(1, 3), 3: Fraction(2, 3)}


@pytest.mark.parametrize("n", [1, 2, 5, 17, 64])
def test_pmf_sums_to_one_exactly(n):
    assert pmf_min_repeat(n).total() == 1
    assert pmf_uniform_vertex_depth(n).total() == 1


def test_pmf_float_regime_normalized():
    pmf = pmf_min_repeat(500)
    assert not pmf.exact
    assert abs(math.fsum(pmf.floats()) - 1) < 1e-12


def test_vertex_depth_small():
    assert pmf_uniform_vertex_depth(1).as_dict() == {0: 1}
    assert pmf_uniform_vertex_depth(2).as_dict() == {0: Fraction(1, 2), 1: Fraction(1, 2)}


@pytest.mark.parametrize("n", range(2, 7))
def test_leaf_depth_identity_exact(n):
    assert pmf_min_repeat(n).as_dict() == Pmf.from_mapping(oracle.exact_leaf_depth_distribution(n)).shift(1).as_dict()


@pytest.mark.parametrize("n", range(2, 7))
def test_vertex_depth_identity_exact(n):
    assert pmf_uniform_vertex_depth(n).as_dict() == oracle.exact_vertex_depth_distribution(n)


def test_sample_first_repeat_law(rng):
    n = 12
    draws = sample_first_repeat(n, 50_000, rng)
    obs = dict(zip(*np.unique(np.minimum(draws, n), return_counts=True)))
    obs = {int(k): int(v) for k, v in obs.items()}
    assert chi_square_gof(obs, pmf_min_repeat(n).as_dict())[1] > ALPHA


def test_empirical_leaf_depth_n3(rng):
    dist = empirical_leaf_depth(3, 100_000, rng)
    assert chi_square_gof(dist.counts, {1: Fraction(1, 3), 2: Fraction(2, 3)})[1] > ALPHA


def test_empirical_leaf_depth_n2(rng):
    assert empirical_leaf_depth(2, 100, rng).counts == {1: 100}


def test_empirical_leaf_depth_n30(rng):
    dist = empirical_leaf_depth(30, 100_000, rng)
    assert chi_square_gof(dist.counts, pmf_min_repeat(30).shift(-1).as_dict())[1] > ALPHA


def test_vertex_depth_modes_agree():
    stat, p = compare_depth_modes(100, 100_000, np.random.default_rng(1), np.random.default_rng(2))
    assert p > ALPHA


def test_vertex_depth_tree_mode_matches_exact(rng):
    vals = vertex_depth_samples(20_000, rng, 5, mode="tree")
    assert chi_square_gof(EmpiricalDist.from_values(vals).counts, pmf_uniform_vertex_depth(5).as_dict())[1] > ALPHA


def test_rayleigh_closed_form():
    assert rayleigh_cdf(math.sqrt(2 * math.log(2))) == pytest.approx(0.5, abs=1e-15)
    assert rayleigh_sf(-1.0) == 1.0
    assert rayleigh_sf(0.0) == 1.0
    assert rayleigh_sf(2.0) == pytest.approx(math.exp(-2))


def test_rayleigh_ks_finite_size():
    small = rayleigh_ks(10, 100_000, np.random.default_rng(3))
    large = rayleigh_ks(10_000, 100_000, np.random.default_rng(3))
    print(f"KS n=10: {small:.4f}  n=10^4: {large:.4f}")
    assert 0 <= large < 0.02
    assert 0 <= small <= 1


def test_joint_leaf_depths_shape(rng):
    out = joint_leaf_depths(10, 3, 50, rng)
    assert out.shape == (50, 3)
    assert (out[:, 0] >= 1).all()
    assert ((out >= 1) | (out == -1)).all()


def test_empirical_dist_merge_and_csv():
    a = EmpiricalDist.from_values([1, 1, 2])
    b = EmpiricalDist.from_values([2, 3])
    m = EmpiricalDist.merge([a, b])
    assert m.total == 5 and m.counts == {1: 2, 2: 2, 3: 1}
    rows = m.csv_rows()
    assert rows[0] == "value,count,prob"
    assert rows[1].startswith("1,2,0.4")
    assert m.cdf(2) == pytest.approx(0.8)


def test_dominance_identical():
    a = EmpiricalDist.from_values([1, 2, 2, 3])
    rep = dominance_report(a, a)
    assert rep.max_violation == 0 and rep.dominates


def test_dominance_star_vs_path_exact():
    star = EmpiricalDist.from_values([1] * 1000)
    path = EmpiricalDist.from_values([2] * 1000)
    assert dominance_report(star, path).dominates
    assert not dominance_report(path, star).dominates


def test_height_histogram_rooted_small(rng):
    assert height_histogram(Family("rooted", n=1), 50, rng).counts == {0: 50}
    h = height_histogram(Family("rooted", n=3), 20_000, rng)
    assert chi_square_gof(h.counts, oracle.exact_height_distribution(3))[1] > ALPHA


def test_height_histogram_other_families(rng):
    h = height_histogram(Family("degree", degrees=(2, 2, 2)), 10_000, rng)
    assert set(h.counts) <= {2, 3}
    h = height_histogram(Family("type", type=TypeVector.from_mapping({0: 2, 2: 1})), 100, rng)
    assert h.counts == {1: 100}
    h = height_histogram(Family("forest", n=3, roots=(1, 2)), 100, rng)
    assert h.counts == {1: 100}


def test_invalid_family():
    with pytest.raises(ValueError):
        Family("galton-watson", n=3)
