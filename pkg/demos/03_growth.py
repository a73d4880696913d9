"""Grow uniform binary trees one internal vertex at a time."""

from collections import Counter

import numpy as np

from treecode import oracle
from treecode.growth import grow_dary_chain, shape_to_str, unlabel_internal

rng = np.random.default_rng(5)
for step, shape in enumerate(grow_dary_chain(2, 5, rng), 1):
    print(step, shape_to_str(shape))

# Every leaf-labeled shape with three internal vertices shows up about equally often.
shapes = Counter(list(grow_dary_chain(2, 3, rng))[-1] for _ in range(6000))
expected = {unlabel_internal(t) for t in oracle.enumerate_degree_trees((2, 2, 2))}
print(f"{len(shapes)} of {len(expected)} shapes seen; counts range {min(shapes.values())}..{max(shapes.values())}")
