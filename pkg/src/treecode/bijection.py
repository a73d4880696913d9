"""Line-breaking codes for labeled trees and their inverses.

A tree is encoded by cutting it into paths: each path runs from the part of
the tree already visited down to the next target vertex (the smallest
unvisited leaf, or a marked vertex).  The code is the concatenation of those
paths with their final points dropped.  In the other direction, the
positions where a code revisits an earlier label ("repeats") cut the code
back into paths, and the missing labels supply the path endpoints.

Every variant here is a bijection; see ``tests/test_bijection.py`` for the
exhaustive checks.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterable, Sequence

from .trees import (
    DegreeSequence,
    DegreeTree,
    Leaf,
    MarkedTree,
    RootedForest,
    RootedTree,
    TreeValidationError,
    UnrootedTree,
    as_degrees,
    leaves,
    validate,
)

Code = tuple


# ---------------------------------------------------------------------------
# Shared machinery


def _line_break(parent_of: Callable, visited: set, targets: Iterable, keep_end: bool) -> list:
    """Concatenate the paths from ``visited`` to each target in turn.

    ``visited`` must contain the root(s) and is updated in place.
    """
    out: list = []
    for x in targets:
        path = [x]
        u = x
        while u not in visited:
            u = parent_of(u)
            path.append(u)
        path.reverse()
        visited.update(path)
        out.extend(path if keep_end else path[:-1])
    return out


def repeat_positions(seq: Sequence, extra: Iterable = ()) -> list[int]:
    """0-based indices ``j > 0`` where ``seq[j]`` occurred earlier (or lies in ``extra``)."""
    extra = set(extra)
    seen = set()
    out = []
    for j, x in enumerate(seq):
        if j > 0 and (x in seen or x in extra):
            out.append(j)
        seen.add(x)
    return out


def split_at_repeats(seq: Sequence, extra: Iterable = ()) -> list[list]:
    """Cut ``seq`` into maximal runs that start at a repeat (or at position 0)."""
    if not seq:
        return []
    cuts = [0, *repeat_positions(seq, extra), len(seq)]
    return [list(seq[a:b]) for a, b in zip(cuts, cuts[1:])]


def _link_paths(paths: Iterable[Sequence]) -> dict:
    """Parent map from top-down paths; each non-initial vertex gets one parent."""
    parent: dict = {}
    for path in paths:
        for a, b in zip(path, path[1:]):
            if b in parent:
                raise TreeValidationError(f"vertex {b} reached twice while decoding", b)
            parent[b] = a
    return parent


def _check_entries(seq: Sequence[int], n: int, length: int) -> None:
    if len(seq) != length:
        raise TreeValidationError(f"code has length {len(seq)}, expected {length}")
    for pos, x in enumerate(seq, 1):
        if not isinstance(x, int) or not 1 <= x <= n:
            raise TreeValidationError(f"entry {x!r} at position {pos} is outside [1, {n}]", x)


def _absent(seq: Sequence[int], universe: Iterable[int]) -> list[int]:
    present = set(seq)
    return sorted(v for v in universe if v not in present)


# ---------------------------------------------------------------------------
# Rooted trees


def encode_rooted(t: RootedTree) -> Code:
    """Code of length ``n - 1``; label ``k`` occurs once per child of ``k``."""
    validate(t)
    parent = t.parent
    return tuple(_line_break(lambda v: parent[v - 1], {t.root}, leaves(t), keep_end=False))


def decode_rooted(seq: Sequence[int], n: int | None = None) -> RootedTree:
    seq = tuple(seq)
    n = len(seq) + 1 if n is None else n
    _check_entries(seq, n, n - 1)
    if n == 1:
        return RootedTree(1, 1, (0,))
    segments = split_at_repeats(seq)
    ends = _absent(seq, range(1, n + 1))
    paths = [seg + [leaf] for seg, leaf in zip(segments, ends)]
    return RootedTree.from_parent_map(n, seq[0], _link_paths(paths))


# ---------------------------------------------------------------------------
# Unrooted trees


def encode_unrooted(t: UnrootedTree, variant: str = "root1") -> Code:
    """Code of length ``n - 2``.

    ``variant="root1"`` roots the tree at 1 and drops the leading 1 of the
    rooted code.  ``variant="path"`` opens with the interior of the path
    between the two smallest degree-1 vertices, then continues as for rooted
    trees (see the README for the exact convention).
    """
    validate(t)
    if t.n < 2:
        raise TreeValidationError("unrooted codes need n >= 2")
    if variant == "root1":
        code = encode_rooted(t.rooted_at(1))
        assert code[0] == 1
        return code[1:]
    if variant == "path":
        deg = t.degrees()
        ends = [v for v in range(1, t.n + 1) if deg[v] == 1]
        a, b = ends[0], ends[1]
        rt = t.rooted_at(a)
        parent = rt.parent
        first = _line_break(lambda v: parent[v - 1], {a}, [b], keep_end=True)
        visited = set(first)
        rest = _line_break(lambda v: parent[v - 1], visited, ends[2:], keep_end=False)
        return tuple(first[1:-1] + rest)
    raise ValueError(f"unknown unrooted variant {variant!r}")


def decode_unrooted(seq: Sequence[int], n: int | None = None, variant: str = "root1") -> UnrootedTree:
    seq = tuple(seq)
    n = len(seq) + 2 if n is None else n
    if n < 2:
        raise TreeValidationError("unrooted codes need n >= 2")
    _check_entries(seq, n, n - 2)
    if variant == "root1":
        return decode_rooted((1, *seq), n).unrooted()
    if variant == "path":
        ends = _absent(seq, range(1, n + 1))
        segments = split_at_repeats(seq)
        if not segments:
            return UnrootedTree.from_edges(n, [(ends[0], ends[1])])
        paths = [[ends[0], *segments[0], ends[1]]]
        paths += [seg + [leaf] for seg, leaf in zip(segments[1:], ends[2:])]
        return UnrootedTree.from_edges(n, [(a, b) for p in paths for a, b in zip(p, p[1:])])
    raise ValueError(f"unknown unrooted variant {variant!r}")


# ---------------------------------------------------------------------------
# Marked vertices


def encode_marked(mt: MarkedTree) -> Code:
    """Code of length ``n + r - 1`` for a tree with ``r >= 1`` ordered marks.

    The first ``r`` paths run to the marks and keep their endpoint (a mark on
    an already visited vertex contributes just that vertex).  The remaining
    paths run to the unvisited leaves in increasing order and drop theirs.
    """
    validate(mt)
    if not mt.marks:
        raise TreeValidationError("at least one mark is required")
    t = mt.tree
    parent = t.parent
    up = lambda v: parent[v - 1]  # noqa: E731
    visited = {t.root}
    out = _line_break(up, visited, mt.marks, keep_end=True)
    rest = [v for v in leaves(t) if v not in visited]
    out += _line_break(up, visited, rest, keep_end=False)
    return tuple(out)


def decode_marked(seq: Sequence[int], r: int, n: int | None = None) -> MarkedTree:
    """Inverse of :func:`encode_marked`.

    Repeats delimit the paths.  The first ``r`` paths end at their own last
    entry, which is the corresponding mark; later paths end at the absent
    labels taken in increasing order.
    """
    seq = tuple(seq)
    if r < 1:
        raise TreeValidationError("at least one mark is required")
    n = len(seq) - r + 1 if n is None else n
    if n < 1:
        raise TreeValidationError("code too short for the number of marks")
    _check_entries(seq, n, n + r - 1)
    segments = split_at_repeats(seq)
    if len(segments) < r:
        raise TreeValidationError(f"code has {len(segments)} paths, fewer than {r} marks")
    marks = tuple(seg[-1] for seg in segments[:r])
    ends = _absent(seq, range(1, n + 1))
    if len(ends) != len(segments) - r:
        raise TreeValidationError("number of absent labels does not match number of leaf paths")
    paths = segments[:r] + [seg + [leaf] for seg, leaf in zip(segments[r:], ends)]
    tree = RootedTree.from_parent_map(n, seq[0], _link_paths(paths))
    return MarkedTree(tree, marks)


# ---------------------------------------------------------------------------
# Forests


def encode_forest(f: RootedForest) -> Code:
    """Code of length ``n - |S|`` whose first entry (if any) is a root."""
    validate(f)
    parent = f.parent
    return tuple(_line_break(lambda v: parent[v - 1], set(f.roots), leaves(f), keep_end=False))


def decode_forest(seq: Sequence[int], n: int, roots: Iterable[int]) -> RootedForest:
    seq = tuple(seq)
    S = sorted(set(roots))
    if not S:
        raise TreeValidationError("root set must be nonempty")
    for s in S:
        if not 1 <= s <= n:
            raise TreeValidationError(f"root {s} outside [1, {n}]", s)
    _check_entries(seq, n, n - len(S))
    if not seq:
        return RootedForest(n, tuple(S), (0,) * n)
    if seq[0] not in S:
        raise TreeValidationError(f"first entry {seq[0]} is not a root", seq[0])
    segments = split_at_repeats(seq, extra=S)
    ends = _absent(seq, (v for v in range(1, n + 1) if v not in set(S)))
    if len(ends) != len(segments):
        raise TreeValidationError("number of absent labels does not match number of paths")
    paths = [seg + [leaf] for seg, leaf in zip(segments, ends)]
    return RootedForest.from_parent_map(n, S, _link_paths(paths))


# ---------------------------------------------------------------------------
# Trees with given child counts


def _check_degree_code(seq: Sequence[int], d: DegreeSequence) -> None:
    if len(seq) != d.m + d.L - 1:
        raise TreeValidationError(f"code has length {len(seq)}, expected {d.m + d.L - 1}")
    counts = Counter(seq)
    for pos, x in enumerate(seq, 1):
        if not isinstance(x, int) or not 1 <= x <= d.m:
            raise TreeValidationError(f"entry {x!r} at position {pos} is outside [1, {d.m}]", x)
    for i, di in enumerate(d.d, 1):
        if counts[i] != di:
            raise TreeValidationError(f"label {i} occurs {counts[i]} times, expected {di}", i)


def encode_degree(t: DegreeTree) -> Code:
    """Code in which internal label ``i`` occurs ``d_i`` times; path ``i`` ends at ``Leaf(i)``."""
    validate(t)
    targets = [Leaf(j) for j in range(1, t.L + 1)]
    return tuple(_line_break(t.parent_of, {t.root}, targets, keep_end=False))


def decode_degree(seq: Sequence[int], d) -> DegreeTree:
    d = as_degrees(d)
    seq = tuple(seq)
    _check_degree_code(seq, d)
    segments = split_at_repeats(seq)
    paths = [seg + [Leaf(j)] for j, seg in enumerate(segments, 1)]
    return DegreeTree.from_parent_map(d, seq[0], _link_paths(paths))


def degree_paths(seq: Sequence[int], d) -> list[list]:
    """The line-breaking paths of :func:`decode_degree`, endpoints included."""
    d = as_degrees(d)
    _check_degree_code(seq, d)
    return [seg + [Leaf(j)] for j, seg in enumerate(split_at_repeats(seq), 1)]
