"""Depth laws: exact first-repeat pmfs, Monte Carlo, and the Rayleigh limit."""

import numpy as np

from treecode import oracle
from treecode.statistics import Pmf, empirical_leaf_depth, pmf_min_repeat, rayleigh_ks

for n in range(2, 6):
    exact = pmf_min_repeat(n).shift(-1).as_dict()
    brute = Pmf.from_mapping(oracle.exact_leaf_depth_distribution(n)).as_dict()
    print(n, "smallest-leaf depth law matches enumeration:", exact == brute)

rng = np.random.default_rng(1)
dist = empirical_leaf_depth(30, 20_000, rng)
print("\n".join(dist.csv_rows()[:6]))

for n in (10, 100, 10_000):
    print(f"KS to Rayleigh at n={n}: {rayleigh_ks(n, 50_000, rng):.4f}")
