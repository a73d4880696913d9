"""Uniform samplers and the covering coupling, checked against enumeration."""

from collections import Counter

import numpy as np

from treecode import TypeVector, oracle
from treecode.sampling import CoveringMove, sample_coupled_cover, sample_uniform_rooted, sample_uniform_type
from treecode.statistics import chi_square_uniform, smallest_leaf_depth
from treecode.trees import type_of

rng = np.random.default_rng(2024)

counts = Counter(sample_uniform_rooted(3, rng) for _ in range(9000))
stat, p = chi_square_uniform(counts, list(oracle.enumerate_rooted(3)))
print(f"rooted n=3: {len(counts)} trees seen, chi-square p={p:.3f}")

star_type = TypeVector.parse("0:3,3:1")
print("star type sample:", type_of(sample_uniform_type(star_type, rng)))

# Splitting a vertex never makes the smallest leaf shallower under the coupling.
t = TypeVector.parse("0:10,1:1,2:9")
move = CoveringMove(1, 1)
gaps = []
for _ in range(2000):
    a, b = sample_coupled_cover(t, move, rng)
    gaps.append(smallest_leaf_depth(b) - smallest_leaf_depth(a))
print("min depth gap over 2000 coupled pairs:", min(gaps))
