"""Encode and decode trees with the line-breaking codes.

Run with ``python3 demos/01_line_breaking_codes.py``.
"""

import itertools

from treecode import (
    DegreeTree,
    Leaf,
    decode_degree,
    decode_rooted,
    discovery_order,
    encode_degree,
    encode_rooted,
)
from treecode.formats import to_dot
from treecode.trees import RootedTree, leaves

# A path 2 - 3 - 1 rooted at 2 has one leaf, so its code is the path minus the leaf.
t = RootedTree.from_parent_map(3, 2, {3: 2, 1: 3})
print("leaves:", leaves(t), "code:", encode_rooted(t))

# Every word of length n-1 over [n] is the code of exactly one rooted tree.
n = 4
trees = {decode_rooted(v, n) for v in itertools.product(range(1, n + 1), repeat=n - 1)}
print(f"distinct trees from all words at n={n}:", len(trees))

# Trees with prescribed child counts: four internal vertices of four children each.
code = (2, 2, 3, 2, 4, 4, 1, 1, 2, 1, 3, 4, 3, 4, 1, 3)
quaternary = decode_degree(code, (4, 4, 4, 4))
assert encode_degree(quaternary) == code
print("discovery order:", " ".join(str(v) for v in discovery_order(quaternary)))

cherry = DegreeTree.from_parent_map((2,), 1, {Leaf(1): 1, Leaf(2): 1})
print(to_dot(cherry))
