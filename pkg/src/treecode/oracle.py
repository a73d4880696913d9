"""Brute-force enumeration and closed-form counts.

Nothing here touches the coding machinery: trees are produced by running
over candidate parent maps and discarding the cyclic ones.  This module is
the ground truth the bijections and samplers are checked against.
"""

from __future__ import annotations

import itertools
import math
import warnings
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterable, Iterator

from .trees import (
    DegreeTree,
    RootedForest,
    RootedTree,
    TypeVector,
    as_degrees,
    depths,
    leaves,
    type_of,
)

MAX_N = 7
MAX_DEGREE_SIZE = 8


class CapExceeded(ValueError):
    pass


def _check_cap(value: int, cap: int, what: str, override: bool) -> None:
    if value > cap:
        if not override:
            raise CapExceeded(f"{what}={value} exceeds enumeration cap {cap}")
        warnings.warn(f"enumerating with {what}={value} above the default cap {cap}", stacklevel=3)


def _reaches_roots(parent: list[int], n: int) -> bool:
    """True iff following ``parent`` (0 = root) from every vertex terminates."""
    state = [0] * (n + 1)  # 0 unknown, 1 on current trail, 2 known good
    for v in range(1, n + 1):
        trail = []
        u = v
        while u and state[u] == 0:
            state[u] = 1
            trail.append(u)
            u = parent[u - 1]
        if u and state[u] == 1:
            return False
        for x in trail:
            state[x] = 2
    return True


def _acyclic_maps(n: int, free: list[int]) -> Iterator[tuple[int, ...]]:
    """Parent tuples assigning every vertex in ``free`` a parent other than itself."""
    choices = [[p for p in range(1, n + 1) if p != v] for v in free]
    base = [0] * n
    for combo in itertools.product(*choices):
        for v, p in zip(free, combo):
            base[v - 1] = p
        if _reaches_roots(base, n):
            yield tuple(base)


def enumerate_rooted(n: int, allow_large: bool = False, workers: int = 1) -> Iterator[RootedTree]:
    """All rooted trees on ``[n]``, root-major, then lexicographic in the parent map.

    With ``workers > 1`` the roots are farmed out to processes; the output
    order is the same as the sequential one.
    """
    _check_cap(n, MAX_N, "n", allow_large)
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            for chunk in ex.map(_rooted_with_root, [n] * n, range(1, n + 1)):
                yield from chunk
        return
    for root in range(1, n + 1):
        free = [v for v in range(1, n + 1) if v != root]
        for par in _acyclic_maps(n, free):
            yield RootedTree(n, root, par)


def _rooted_with_root(n: int, root: int) -> list[RootedTree]:
    free = [v for v in range(1, n + 1) if v != root]
    return [RootedTree(n, root, par) for par in _acyclic_maps(n, free)]


def enumerate_forests(n: int, roots: Iterable[int], allow_large: bool = False) -> Iterator[RootedForest]:
    _check_cap(n, MAX_N, "n", allow_large)
    S = sorted(set(roots))
    free = [v for v in range(1, n + 1) if v not in set(S)]
    for par in _acyclic_maps(n, free):
        yield RootedForest(n, tuple(S), par)


def enumerate_unrooted(n: int, allow_large: bool = False):
    """All trees on ``[n]``, as the rooted-at-1 trees forgotten to edge sets."""
    for t in enumerate_forests(n, [1], allow_large):
        yield RootedTree(n, 1, t.parent).unrooted()


def enumerate_degree_trees(d, allow_large: bool = False) -> Iterator[DegreeTree]:
    """All trees in which internal vertex ``i`` has exactly ``d_i`` children."""
    d = as_degrees(d)
    m, L = d.m, d.L
    _check_cap(m + L, MAX_DEGREE_SIZE, "m+L", allow_large)
    for root in range(1, m + 1):
        nonroot = [i for i in range(1, m + 1) if i != root]
        slots = m + L - 1
        # assign the nonroot internals and the leaves to parents with fixed capacities
        for ip in _capacity_assignments(d.d, nonroot, L):
            internal_parent = [0] * m
            for v, p in zip(nonroot, ip):
                internal_parent[v - 1] = p
            if not _reaches_roots(internal_parent, m):
                continue
            leaf_parent = tuple(ip[len(nonroot):])
            assert len(ip) == slots
            yield DegreeTree(d, root, tuple(internal_parent), leaf_parent)


def _capacity_assignments(caps: tuple[int, ...], nonroot: list[int], L: int) -> Iterator[list[int]]:
    """Assign a parent to each of ``len(nonroot) + L`` vertices so parent ``i`` is used ``caps[i-1]`` times."""
    items = list(nonroot) + [None] * L
    remaining = list(caps)
    out = [0] * len(items)

    def rec(k: int):
        if k == len(items):
            yield list(out)
            return
        v = items[k]
        for p in range(1, len(caps) + 1):
            if remaining[p - 1] and p != v:
                remaining[p - 1] -= 1
                out[k] = p
                yield from rec(k + 1)
                remaining[p - 1] += 1

    yield from rec(0)


# ---------------------------------------------------------------------------
# Closed forms


def count_rooted(n: int) -> int:
    return n ** (n - 1)


def count_unrooted(n: int) -> int:
    return 1 if n == 1 else n ** (n - 2)


def count_forests(n: int, s: int) -> int:
    if s == n:
        return 1
    return s * n ** (n - s - 1)


def count_marked(n: int, r: int) -> int:
    return n ** (n - 1) * n ** r


def count_type(t: TypeVector) -> int:
    """Multinomial choice of labels per child count, times arrangements of the code."""
    if not t.is_valid():
        return 0
    n = t.n
    labels = math.factorial(n)
    for k in t.counts:
        labels //= math.factorial(k)
    codes = math.factorial(n - 1)
    for c, k in enumerate(t.counts):
        codes //= math.factorial(c) ** k
    return labels * codes


def count_degree(d) -> int:
    d = as_degrees(d)
    out = math.factorial(d.m + d.L - 1)
    for x in d.d:
        out //= math.factorial(x)
    return out


def all_types(n: int) -> list[TypeVector]:
    """Every valid type on ``n`` vertices: partitions of ``n - 1`` into at most ``n`` parts."""
    out = []
    for parts in _partitions(n - 1, n - 1):
        if len(parts) > n:
            continue
        c = Counter(parts)
        c[0] = n - len(parts)
        out.append(TypeVector.from_mapping(c))
    return out


def _partitions(total: int, largest: int) -> Iterator[list[int]]:
    if total == 0:
        yield []
        return
    for k in range(min(total, largest), 0, -1):
        for rest in _partitions(total - k, k):
            yield [k, *rest]


def type_histogram(n: int) -> Counter:
    """Number of enumerated trees of each type."""
    return Counter(type_of(t) for t in enumerate_rooted(n))


# ---------------------------------------------------------------------------
# Exact depth laws


def exact_leaf_depth_distribution(n: int) -> dict[int, Fraction]:
    """Law of the depth of a uniform leaf of a uniform tree on ``[n]`` (``n >= 2``)."""
    if n < 2:
        raise ValueError("trees on one vertex have no leaves")
    law: Counter = Counter()
    total = count_rooted(n)
    for t in enumerate_rooted(n):
        lv = leaves(t)
        dep = depths(t)
        w = Fraction(1, total * len(lv))
        for v in lv:
            law[dep[v]] += w
    return dict(sorted(law.items()))


def exact_vertex_depth_distribution(n: int) -> dict[int, Fraction]:
    """Law of the depth of a uniform vertex of a uniform tree on ``[n]``."""
    law: Counter = Counter()
    w = Fraction(1, count_rooted(n) * n)
    for t in enumerate_rooted(n):
        for k in depths(t).values():
            law[k] += w
    return dict(sorted(law.items()))


def exact_height_distribution(n: int) -> dict[int, Fraction]:
    law: Counter = Counter()
    w = Fraction(1, count_rooted(n))
    for t in enumerate_rooted(n):
        law[max(depths(t).values())] += w
    return dict(sorted(law.items()))


def exact_smallest_leaf_depth_by_type(t: TypeVector) -> dict[int, Fraction]:
    """Depth law of the smallest leaf in a uniform tree of type ``t``."""
    law: Counter = Counter()
    trees = [x for x in enumerate_rooted(t.n) if type_of(x) == t]
    for x in trees:
        law[depths(x)[leaves(x)[0]]] += Fraction(1, len(trees))
    return dict(sorted(law.items()))



# ---------------------------------------------------------------------------
# Sequence spaces


def multiset_permutations(items) -> Iterator[tuple]:
    """Distinct orderings of a multiset, in lexicographic order."""
    counts = Counter(items)
    keys = sorted(counts)
    total = sum(counts.values())
    out: list = []

    def rec():
        if len(out) == total:
            yield tuple(out)
            return
        for k in keys:
            if counts[k]:
                counts[k] -= 1
                out.append(k)
                yield from rec()
                out.pop()
                counts[k] += 1

    yield from rec()


def degree_sequences(max_size: int) -> Iterator[tuple[int, ...]]:
    """Every degree sequence ``d`` with ``m + L <= max_size``, i.e. ``sum(d) <= max_size - 1``."""

    def compositions(total: int) -> Iterator[tuple[int, ...]]:
        if total == 0:
            yield ()
            return
        for first in range(1, total + 1):
            for rest in compositions(total - first):
                yield (first, *rest)

    for s in range(1, max_size):
        yield from compositions(s)


def degree_code_space(d) -> Iterator[tuple[int, ...]]:
    d = as_degrees(d)
    return multiset_permutations([i for i, di in enumerate(d.d, 1) for _ in range(di)])
