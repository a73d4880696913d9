"""Labeled rooted trees, forests and degree-constrained trees.

Vertices of :class:`RootedTree` and :class:`RootedForest` are the integers
``1..n``.  A :class:`DegreeTree` has integer internal vertices ``1..m`` and
abstract leaves, represented by :class:`Leaf`.

Parent maps are the canonical representation.  Parents are stored as tuples
indexed by ``vertex - 1`` with ``0`` marking a root, which keeps trees
hashable and cheap to compare during exhaustive enumeration.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Union


class TreeValidationError(ValueError):
    """Raised when a tree, forest or code violates a structural invariant."""

    def __init__(self, message: str, vertex=None):
        super().__init__(message)
        self.vertex = vertex


@dataclass(frozen=True, order=True)
class Leaf:
    """Abstract leaf label ``l<index>`` of a :class:`DegreeTree`."""

    index: int

    def __str__(self) -> str:
        return f"l{self.index}"

    __repr__ = __str__


Vertex = Union[int, Leaf]


def vertex_key(v: Vertex) -> str:
    """String id used in JSON: ``"i3"`` for internal 3, ``"l5"`` for leaf 5."""
    return str(v) if isinstance(v, Leaf) else f"i{v}"


def parse_vertex_key(s: str) -> Vertex:
    s = s.strip()
    if s.startswith("l"):
        return Leaf(int(s[1:]))
    if s.startswith("i"):
        return int(s[1:])
    return int(s)


# ---------------------------------------------------------------------------
# Data types


@dataclass(frozen=True)
class RootedTree:
    n: int
    root: int
    parent: tuple[int, ...]

    @classmethod
    def from_parent_map(cls, n: int, root: int, parent: Mapping[int, int]) -> "RootedTree":
        return cls(n, root, tuple(parent.get(v, 0) for v in range(1, n + 1)))

    @classmethod
    def from_edges(cls, n: int, root: int, edges: Iterable[tuple[int, int]]) -> "RootedTree":
        """Orient an undirected edge set towards ``root``."""
        adj = _adjacency(n, edges)
        par = [0] * n
        seen = {root}
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    par[w - 1] = u
                    stack.append(w)
        if len(seen) != n:
            raise TreeValidationError("edge set is not a spanning tree")
        return cls(n, root, tuple(par))

    @property
    def roots(self) -> tuple[int, ...]:
        return (self.root,)

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def parent_of(self, v: int) -> int | None:
        p = self.parent[v - 1]
        return p or None

    def parent_map(self) -> dict[int, int]:
        return {v: p for v, p in enumerate(self.parent, 1) if p}

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for v, p in enumerate(self.parent, 1):
            if p:
                ch[p].append(v)
        return ch

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(parent, child)`` pairs, ordered by child."""
        return [(p, v) for v, p in enumerate(self.parent, 1) if p]

    def unrooted(self) -> "UnrootedTree":
        return UnrootedTree.from_edges(self.n, self.edges())


@dataclass(frozen=True)
class UnrootedTree:
    n: int
    edges: frozenset[tuple[int, int]]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UnrootedTree":
        return cls(n, frozenset((min(u, v), max(u, v)) for u, v in edges))

    def rooted_at(self, root: int) -> RootedTree:
        return RootedTree.from_edges(self.n, root, self.edges)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(range(1, self.n + 1), 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg


@dataclass(frozen=True)
class RootedForest:
    n: int
    roots: tuple[int, ...]
    parent: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "roots", tuple(sorted(self.roots)))

    @classmethod
    def from_parent_map(cls, n: int, roots: Iterable[int], parent: Mapping[int, int]) -> "RootedForest":
        return cls(n, tuple(roots), tuple(parent.get(v, 0) for v in range(1, n + 1)))

    def vertices(self) -> range:
        return range(1, self.n + 1)

    def parent_of(self, v: int) -> int | None:
        return self.parent[v - 1] or None

    def parent_map(self) -> dict[int, int]:
        return {v: p for v, p in enumerate(self.parent, 1) if p}

    def children(self) -> dict[int, list[int]]:
        ch: dict[int, list[int]] = {v: [] for v in self.vertices()}
        for v, p in enumerate(self.parent, 1):
            if p:
                ch[p].append(v)
        return ch

    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parent, 1) if p]


@dataclass(frozen=True)
class MarkedTree:
    tree: RootedTree
    marks: tuple[int, ...]


@dataclass(frozen=True)
class TypeVector:
    """Child-count profile: ``counts[c]`` vertices have exactly ``c`` children."""

    counts: tuple[int, ...]

    def __post_init__(self):
        c = list(self.counts)
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "counts", tuple(c))

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int]) -> "TypeVector":
        if not mapping:
            return cls((0,))
        top = max(mapping)
        return cls(tuple(mapping.get(c, 0) for c in range(top + 1)))

    @classmethod
    def parse(cls, text: str) -> "TypeVector":
        """Parse ``"0:2,2:1"``."""
        mapping: dict[int, int] = {}
        for item in text.split(","):
            c, k = item.split(":")
            mapping[int(c)] = mapping.get(int(c), 0) + int(k)
        return cls.from_mapping(mapping)

    def __getitem__(self, c: int) -> int:
        return self.counts[c] if 0 <= c < len(self.counts) else 0

    def as_dict(self) -> dict[int, int]:
        return {c: k for c, k in enumerate(self.counts) if k}

    @property
    def n(self) -> int:
        return sum(self.counts)

    def is_valid(self) -> bool:
        if any(k < 0 for k in self.counts) or self.n < 1:
            return False
        return sum(c * k for c, k in enumerate(self.counts)) == self.n - 1

    def check(self) -> None:
        if not self.is_valid():
            raise TreeValidationError(f"not a valid tree type: {self.as_dict()}")

    def __str__(self) -> str:
        return ",".join(f"{c}:{k}" for c, k in self.as_dict().items())


@dataclass(frozen=True)
class DegreeSequence:
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if not self.d or any(x < 1 for x in self.d):
            raise TreeValidationError(f"degree sequence must be nonempty and positive: {self.d}")

    @property
    def m(self) -> int:
        return len(self.d)

    @property
    def L(self) -> int:
        return 1 + sum(x - 1 for x in self.d)

    @property
    def size(self) -> int:
        return self.m + self.L

    def __iter__(self):
        return iter(self.d)

    def __len__(self):
        return len(self.d)

    def __getitem__(self, i):
        return self.d[i]

    def extended(self, dnew: int) -> "DegreeSequence":
        return DegreeSequence(self.d + (dnew,))


def as_degrees(d) -> DegreeSequence:
    return d if isinstance(d, DegreeSequence) else DegreeSequence(tuple(d))


@dataclass(frozen=True)
class DegreeTree:
    """Tree on internal vertices ``1..m`` and leaves ``Leaf(1)..Leaf(L)``.

    ``internal_parent[i-1]`` is the parent of internal ``i`` (``0`` for the
    root); ``leaf_parent[j-1]`` is the parent of ``Leaf(j)``.  Parents are
    always internal vertices.
    """

    degrees: DegreeSequence
    root: int
    internal_parent: tuple[int, ...]
    leaf_parent: tuple[int, ...]

    @classmethod
    def from_parent_map(cls, degrees, root: int, parent: Mapping[Vertex, int]) -> "DegreeTree":
        degrees = as_degrees(degrees)
        ip = tuple(parent.get(i, 0) for i in range(1, degrees.m + 1))
        lp = tuple(parent.get(Leaf(j), 0) for j in range(1, degrees.L + 1))
        return cls(degrees, root, ip, lp)

    @property
    def m(self) -> int:
        return self.degrees.m

    @property
    def L(self) -> int:
        return self.degrees.L

    @property
    def roots(self) -> tuple[int, ...]:
        return (self.root,)

    def vertices(self) -> list[Vertex]:
        return [*range(1, self.m + 1), *(Leaf(j) for j in range(1, self.L + 1))]

    def parent_of(self, v: Vertex) -> int | None:
        if isinstance(v, Leaf):
            return self.leaf_parent[v.index - 1] or None
        return self.internal_parent[v - 1] or None

    def parent_map(self) -> dict[Vertex, int]:
        pm: dict[Vertex, int] = {i: p for i, p in enumerate(self.internal_parent, 1) if p}
        pm.update((Leaf(j), p) for j, p in enumerate(self.leaf_parent, 1) if p)
        return pm

    def children(self) -> dict[Vertex, list[Vertex]]:
        ch: dict[Vertex, list[Vertex]] = {v: [] for v in self.vertices()}
        for v, p in self.parent_map().items():
            ch[p].append(v)
        return ch

    def edges(self) -> list[tuple[int, Vertex]]:
        return [(p, v) for v, p in self.parent_map().items()]

    def relabel_internal(self, perm: Mapping[int, int]) -> "DegreeTree":
        """Apply a permutation of internal labels (degrees follow the labels)."""
        new_d = [0] * self.m
        for i, x in enumerate(self.degrees.d, 1):
            new_d[perm[i] - 1] = x
        pm = {}
        for v, p in self.parent_map().items():
            pm[perm[v] if isinstance(v, int) else v] = perm[p]
        return DegreeTree.from_parent_map(DegreeSequence(tuple(new_d)), perm[self.root], pm)


AnyTree = Union[RootedTree, RootedForest, DegreeTree]


# ---------------------------------------------------------------------------
# Validation


def validate(t) -> None:
    """Raise :class:`TreeValidationError` naming the first violated invariant."""
    if isinstance(t, MarkedTree):
        validate(t.tree)
        for x in t.marks:
            if not 1 <= x <= t.tree.n:
                raise TreeValidationError(f"mark {x} is not a vertex", x)
        return
    if isinstance(t, UnrootedTree):
        _validate_unrooted(t)
        return
    if isinstance(t, DegreeTree):
        _validate_degree_tree(t)
        return
    if t.n < 1 or len(t.parent) != t.n:
        raise TreeValidationError("parent array length does not match n")
    roots = set(t.roots)
    if not roots:
        raise TreeValidationError("root set is empty")
    for s in roots:
        if not 1 <= s <= t.n:
            raise TreeValidationError(f"root {s} out of range", s)
        if t.parent[s - 1]:
            raise TreeValidationError(f"root {s} has a parent", s)
    for v, p in enumerate(t.parent, 1):
        if v not in roots:
            if p == 0:
                raise TreeValidationError(f"vertex {v} has no parent and is not a root", v)
            if not 1 <= p <= t.n:
                raise TreeValidationError(f"parent of {v} out of range", v)
    _check_acyclic(t.parent_map(), t.vertices())


def is_valid(t) -> bool:
    try:
        validate(t)
    except TreeValidationError:
        return False
    return True


def _check_acyclic(parent: Mapping, vertices: Iterable) -> None:
    done: set = set()
    for v in vertices:
        trail = []
        on_trail = set()
        u = v
        while u in parent and u not in done:
            if u in on_trail:
                raise TreeValidationError(f"cycle at vertex {u}", u)
            trail.append(u)
            on_trail.add(u)
            u = parent[u]
        done.update(trail)


def _validate_degree_tree(t: DegreeTree) -> None:
    m, L = t.m, t.L
    if len(t.internal_parent) != m or len(t.leaf_parent) != L:
        raise TreeValidationError("parent arrays do not match degree sequence")
    if not 1 <= t.root <= m:
        raise TreeValidationError(f"root {t.root} is not an internal vertex", t.root)
    if t.internal_parent[t.root - 1]:
        raise TreeValidationError(f"root {t.root} has a parent", t.root)
    counts = Counter()
    for v, p in [*enumerate(t.internal_parent, 1), *((Leaf(j), p) for j, p in enumerate(t.leaf_parent, 1))]:
        if v == t.root:
            continue
        if not isinstance(p, int) or not 1 <= p <= m:
            raise TreeValidationError(f"vertex {v} has no valid internal parent", v)
        counts[p] += 1
    for i, di in enumerate(t.degrees.d, 1):
        if counts[i] != di:
            raise TreeValidationError(f"internal vertex {i} has {counts[i]} children, expected {di}", i)
    _check_acyclic(t.parent_map(), t.vertices())


def _validate_unrooted(t: UnrootedTree) -> None:
    if len(t.edges) != t.n - 1:
        raise TreeValidationError("an unrooted tree on n vertices has n-1 edges")
    for u, v in t.edges:
        if not (1 <= u <= t.n and 1 <= v <= t.n) or u == v:
            raise TreeValidationError(f"bad edge {(u, v)}", u)
    t.rooted_at(1)  # raises if disconnected


def _adjacency(n: int, edges: Iterable[tuple[int, int]]) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {v: [] for v in range(1, n + 1)}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


# ---------------------------------------------------------------------------
# Structural queries


def leaves(t) -> list:
    """Non-root vertices of total degree 1, ascending.

    A root with a single child is *not* a leaf.
    """
    has_child = set(t.parent_map().values())
    roots = set(t.roots)
    out = [v for v in t.vertices() if v not in roots and v not in has_child]
    return sorted(out) if not isinstance(t, DegreeTree) else sorted(out, key=_vertex_sort_key)


def _vertex_sort_key(v: Vertex):
    return (1, v.index) if isinstance(v, Leaf) else (0, v)


def depth(t, v) -> int:
    pm = t.parent_map()
    if v not in pm and v not in t.roots:
        raise KeyError(f"unknown vertex {v!r}")
    k = 0
    while v in pm:
        v = pm[v]
        k += 1
    return k


def depths(t) -> dict:
    """Depth of every vertex (distance to its root), computed in O(n)."""
    pm = t.parent_map()
    out = {r: 0 for r in t.roots}
    for v in t.vertices():
        trail = []
        u = v
        while u not in out:
            trail.append(u)
            u = pm[u]
        k = out[u]
        for w in reversed(trail):
            k += 1
            out[w] = k
    return out


def height(t) -> int:
    return max(depths(t).values())


def path_from_set(t, S: Iterable, x) -> list:
    """The path that starts in ``S``, leaves it immediately and ends at ``x``.

    ``S`` must induce a connected subgraph; if ``x`` is in ``S`` the result
    is the single-vertex path ``[x]``.
    """
    S = set(S)
    if not S:
        raise ValueError("S must be nonempty")
    pm = t.parent_map()
    if sum(1 for s in S if pm.get(s) not in S) != 1:
        raise TreeValidationError("S is not connected")
    if x in S:
        return [x]
    adj: dict = {v: [] for v in t.vertices()}
    for v, p in pm.items():
        adj[v].append(p)
        adj[p].append(v)
    back = {x: None}
    queue = deque([x])
    while queue:
        u = queue.popleft()
        if u in S:
            path = [u]
            while back[path[-1]] is not None:
                path.append(back[path[-1]])
            return path
        for w in adj[u]:
            if w not in back:
                back[w] = u
                queue.append(w)
    raise TreeValidationError(f"vertex {x!r} is not connected to S", x)


def type_of(t: RootedTree) -> TypeVector:
    child_counts = Counter(p for p in t.parent if p)
    per_c = Counter(child_counts.get(v, 0) for v in t.vertices())
    return TypeVector.from_mapping(per_c)


def child_counts(t) -> Counter:
    return Counter(t.parent_map().values())


def discovery_order(t: DegreeTree) -> list[Vertex]:
    """Vertices in order of first appearance along the line-breaking paths.

    Path ``i`` runs from the already-built part of the tree down to
    ``Leaf(i)``; the root comes first.
    """
    order: list[Vertex] = [t.root]
    seen = {t.root}
    for j in range(1, t.L + 1):
        leaf = Leaf(j)
        new = [leaf]
        u = t.leaf_parent[j - 1]
        while u not in seen:
            new.append(u)
            u = t.internal_parent[u - 1]
        seen.update(new)
        order.extend(reversed(new))
    return order


def iter_subtree_leaves(t: DegreeTree) -> dict[Vertex, frozenset[int]]:
    """Map each vertex to the set of leaf indices below it."""
    ch = t.children()
    out: dict[Vertex, frozenset[int]] = {}

    def visit(v):
        stack = [(v, False)]
        while stack:
            u, done = stack.pop()
            if isinstance(u, Leaf):
                out[u] = frozenset((u.index,))
            elif done:
                out[u] = frozenset().union(*(out[c] for c in ch[u]))
            else:
                stack.append((u, True))
                stack.extend((c, False) for c in ch[u])

    visit(t.root)
    return out
