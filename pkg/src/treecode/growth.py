"""Growing uniform trees with prescribed child counts, one internal vertex at a time.

A step adds internal vertex ``m + 1`` with ``d`` children to a tree in
``T_d`` by regrafting around a multiset of ``d`` existing vertices.  On the
level of codes this is the same as inserting ``d`` copies of ``m + 1`` into
the code, read with a leaf ordering that hands the new leaves to the repeats
of ``m + 1`` (:func:`decode_modified` / :func:`encode_modified`).
"""

from __future__ import annotations

from collections import Counter
from typing import Iterator, Sequence

import numpy as np

from .bijection import _check_degree_code, _link_paths, encode_degree, split_at_repeats
from .trees import (
    DegreeTree,
    Leaf,
    TreeValidationError,
    Vertex,
    as_degrees,
    discovery_order,
    validate,
)


def multiset_from_indices(t: DegreeTree, indices: Sequence[int]) -> list[Vertex]:
    """Map 1-based positions in the discovery order to vertices, sorted by that order."""
    order = discovery_order(t)
    out = []
    for i in sorted(indices):
        if not 1 <= i <= len(order):
            raise IndexError(f"index {i} outside [1, {len(order)}]")
        out.append(order[i - 1])
    return out


def sort_by_discovery(t: DegreeTree, vertices: Sequence[Vertex]) -> list[Vertex]:
    rank = {v: k for k, v in enumerate(discovery_order(t))}
    for v in vertices:
        if v not in rank:
            raise TreeValidationError(f"{v!r} is not a vertex of the tree", v)
    return sorted(vertices, key=rank.__getitem__)


def grow_step(t: DegreeTree, w: Sequence[Vertex]) -> DegreeTree:
    """Add internal vertex ``m + 1`` with ``len(w)`` children.

    ``w`` is a multiset of vertices of ``t``; it is sorted by discovery order
    here, so any iteration order is accepted.
    """
    d = len(w)
    if d < 1:
        raise TreeValidationError("multiset must be nonempty")
    w = sort_by_discovery(t, w)
    m, L = t.m, t.L
    new = m + 1
    parent: dict[Vertex, int] = t.parent_map()
    root = t.root

    if w[0] == root:
        parent[root] = new
        root = new
    else:
        parent[new] = parent[w[0]]
        parent[w[0]] = new

    for j in range(2, d + 1):
        leaf = Leaf(L + j - 1)
        if w[j - 1] == w[j - 2]:
            parent[leaf] = new
        else:
            parent[leaf] = parent[w[j - 1]]
            parent[w[j - 1]] = new

    return DegreeTree.from_parent_map(t.degrees.extended(d), root, parent)


def insert_new_label(code: Sequence[int], indices: Sequence[int], label: int) -> tuple[int, ...]:
    """Insert one copy of ``label`` into gap ``i`` for each ``i`` in ``indices``.

    Gap ``i`` (1-based) sits just before the ``i``-th entry of ``code``; gap
    ``len(code) + 1`` is the end.
    """
    by_gap = Counter(indices)
    out: list[int] = []
    for i in range(1, len(code) + 2):
        out.extend([label] * by_gap.get(i, 0))
        if i <= len(code):
            out.append(code[i - 1])
    return tuple(out)


def decode_modified(seq: Sequence[int], d) -> DegreeTree:
    """Decode with new leaves assigned at the repeats of the last internal label.

    With ``d = (d_1, .., d_m, d_{m+1})`` and ``L`` the leaf count of the
    first ``m`` entries: the repeat that is the ``(k+1)``-st occurrence of
    ``m + 1`` closes its path with leaf ``L + k``; the ``k``-th other repeat
    closes with leaf ``k``; the final path ends at leaf ``L``.
    """
    d = as_degrees(d)
    seq = tuple(seq)
    _check_degree_code(seq, d)
    new = d.m
    L_old = d.L - (d.d[-1] - 1)
    segments = split_at_repeats(seq)
    ends: list[Leaf] = []
    new_seen = segments[0].count(new)
    other = 0
    for seg in segments[1:]:
        head = seg[0]
        if head == new:
            # first occurrence of `new` is never a repeat, so new_seen >= 1 here
            ends.append(Leaf(L_old + new_seen))
        else:
            other += 1
            ends.append(Leaf(other))
        new_seen += seg.count(new)
    ends.append(Leaf(L_old))
    paths = [seg + [leaf] for seg, leaf in zip(segments, ends)]
    return DegreeTree.from_parent_map(d, seq[0], _link_paths(paths))


def encode_modified(t: DegreeTree) -> tuple[int, ...]:
    """Inverse of :func:`decode_modified`, built right to left."""
    validate(t)
    d = t.degrees
    new = d.m
    L_old = d.L - (d.d[-1] - 1)
    size = d.m + d.L - 1
    nchild = dict(enumerate(d.d, 1))
    parent = t.parent_of

    unused_new = list(range(L_old + 1, d.L + 1))
    unused_old = list(range(1, L_old))
    v = [0] * (size + 1)
    v[size] = parent(Leaf(L_old))
    suffix = Counter([v[size]])
    for j in range(size - 1, 0, -1):
        nxt = v[j + 1]
        if suffix[nxt] == nchild[nxt]:
            v[j] = parent(nxt)
        else:
            pool = unused_new if nxt == new else unused_old
            if not pool:
                raise TreeValidationError("ran out of leaves while encoding")
            v[j] = parent(Leaf(pool.pop()))
        suffix[v[j]] += 1
    return tuple(v[1:])


def code_for_step(t: DegreeTree, indices: Sequence[int]) -> tuple[int, ...]:
    """Code of ``t`` with ``len(indices)`` copies of ``m + 1`` inserted at ``indices``."""
    return insert_new_label(encode_degree(t), indices, t.m + 1)


# ---------------------------------------------------------------------------
# Shapes


def unlabel_internal(t: DegreeTree):
    """Canonical leaf-labeled shape: nested tuples, leaves as ints.

    Children are ordered by the smallest leaf label below them, which is a
    total order because leaf labels are distinct.
    """
    ch = t.children()
    memo: dict = {}

    def form(v):
        stack = [(v, False)]
        while stack:
            u, done = stack.pop()
            if isinstance(u, Leaf):
                memo[u] = (u.index, u.index)
            elif done:
                kids = sorted((memo[c] for c in ch[u]), key=lambda x: x[0])
                memo[u] = (kids[0][0], tuple(k[1] for k in kids))
            else:
                stack.append((u, True))
                stack.extend((c, False) for c in ch[u])
        return memo[v][1]

    return form(t.root)


def shape_to_str(shape) -> str:
    if isinstance(shape, int):
        return f"l{shape}"
    return "(" + ",".join(shape_to_str(s) for s in shape) + ")"


def shape_internal_sets(shape) -> list[frozenset[int]]:
    """Leaf sets of the internal vertices of a shape (each identifies the vertex)."""
    out: list[frozenset[int]] = []

    def walk(s) -> frozenset[int]:
        if isinstance(s, int):
            return frozenset((s,))
        below = frozenset().union(*(walk(c) for c in s))
        out.append(below)
        return below

    walk(shape)
    return out


# ---------------------------------------------------------------------------
# Random growth


def uniform_multiset(rng: np.random.Generator, universe: int, size: int) -> list[int]:
    """Uniform multiset of ``size`` elements of ``1..universe`` (sorted).

    Uses the stars-and-bars bijection with ``size``-subsets of
    ``1..universe+size-1``, so every multiset is equally likely.
    """
    picks = np.sort(rng.choice(universe + size - 1, size=size, replace=False))
    return [int(c) - k + 1 for k, c in enumerate(picks)]


def initial_dary(d: int) -> DegreeTree:
    """The unique tree with one internal vertex of ``d`` children."""
    return DegreeTree(as_degrees((d,)), 1, (0,), (1,) * d)


def grow_random(t: DegreeTree, d: int, rng: np.random.Generator) -> tuple[DegreeTree, list[int]]:
    """One random growth step; returns the new tree and the index multiset used."""
    idx = uniform_multiset(rng, t.m + t.L, d)
    return grow_step(t, multiset_from_indices(t, idx)), idx


def grow_dary_chain(d: int, m_max: int, rng: np.random.Generator, labeled: bool = False) -> Iterator:
    """Yield ``T_1, .., T_{m_max}``: uniform leaf-labeled ``d``-ary trees, each grown from the last.

    With ``labeled=True`` the internally labeled trees are yielded instead of
    their shapes.
    """
    if d < 2 or m_max < 1:
        raise ValueError("need d >= 2 and m_max >= 1")
    t = initial_dary(d)
    yield t if labeled else unlabel_internal(t)
    for _ in range(1, m_max):
        t, _ = grow_random(t, d, rng)
        yield t if labeled else unlabel_internal(t)
