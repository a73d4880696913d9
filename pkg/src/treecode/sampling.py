"""Uniform samplers built on the codes, and the type-covering coupling.

Every sampler draws a uniform code and decodes it, so uniformity of the
tree follows from bijectivity.  Samplers take a ``numpy.random.Generator``
and mutate nothing else.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .bijection import decode_degree, decode_forest, decode_marked, decode_rooted, decode_unrooted
from .trees import (
    DegreeTree,
    MarkedTree,
    RootedForest,
    RootedTree,
    TreeValidationError,
    TypeVector,
    UnrootedTree,
    as_degrees,
)


def _ints(a) -> tuple[int, ...]:
    return tuple(int(x) for x in a)


def uniform_code(n: int, length: int, rng: np.random.Generator) -> tuple[int, ...]:
    if length <= 0:
        return ()
    return _ints(rng.integers(1, n + 1, size=length))


def sample_uniform_rooted(n: int, rng: np.random.Generator) -> RootedTree:
    if n < 1:
        raise ValueError("n must be positive")
    return decode_rooted(uniform_code(n, n - 1, rng), n)


def sample_uniform_unrooted(n: int, rng: np.random.Generator) -> UnrootedTree:
    if n < 2:
        raise ValueError("unrooted sampling needs n >= 2")
    return decode_unrooted(uniform_code(n, n - 2, rng), n)


def sample_uniform_marked(n: int, r: int, rng: np.random.Generator) -> MarkedTree:
    return decode_marked(uniform_code(n, n + r - 1, rng), r, n)


def sample_constrained_sequence(t: TypeVector, rng: np.random.Generator) -> tuple[int, ...]:
    """Uniform code of length ``n - 1`` in which exactly ``t[c]`` labels occur ``c`` times.

    A uniform permutation of the labels is cut into blocks of sizes
    ``t[0], t[1], ..`` (block ``c`` gets multiplicity ``c``) and the
    resulting multiset is shuffled uniformly.
    """
    t.check()
    n = t.n
    perm = rng.permutation(n) + 1
    multiset: list[int] = []
    pos = 0
    for c, k in enumerate(t.counts):
        for label in perm[pos : pos + k]:
            multiset.extend([int(label)] * c)
        pos += k
    if not multiset:
        return ()
    return _ints(rng.permutation(multiset))


def sample_uniform_type(t: TypeVector, rng: np.random.Generator) -> RootedTree:
    return decode_rooted(sample_constrained_sequence(t, rng), t.n)


def sample_uniform_forest(n: int, roots: Iterable[int], rng: np.random.Generator) -> RootedForest:
    S = sorted(set(roots))
    if not S:
        raise TreeValidationError("root set must be nonempty")
    if len(S) == n:
        return decode_forest((), n, S)
    first = S[int(rng.integers(len(S)))]
    return decode_forest((first, *uniform_code(n, n - len(S) - 1, rng)), n, S)


def sample_degree_code(d, rng: np.random.Generator) -> tuple[int, ...]:
    d = as_degrees(d)
    multiset = [i for i, di in enumerate(d.d, 1) for _ in range(di)]
    return _ints(rng.permutation(multiset))


def sample_uniform_degree(d, rng: np.random.Generator) -> DegreeTree:
    d = as_degrees(d)
    return decode_degree(sample_degree_code(d, rng), d)


# ---------------------------------------------------------------------------
# Covering moves on types


@dataclass(frozen=True)
class CoveringMove:
    """Split one vertex with ``a + b`` children into vertices with ``a`` and ``b`` children."""

    a: int
    b: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("covering moves need a, b >= 1")

    def applicable(self, t: TypeVector) -> bool:
        return t[self.a + self.b] >= 1 and t[0] >= 1

    def apply(self, t: TypeVector) -> TypeVector:
        if not self.applicable(t):
            raise TreeValidationError(f"move {self} does not apply to type {t}")
        c = dict(t.as_dict())
        for key, delta in ((self.a, 1), (self.b, 1), (0, -1), (self.a + self.b, -1)):
            c[key] = c.get(key, 0) + delta
        return TypeVector.from_mapping(c)


def cover_sequence(seq: Sequence[int], n: int, move: CoveringMove, rng: np.random.Generator) -> tuple[int, ...]:
    """Replace ``a`` uniformly chosen occurrences of a uniform ``(a+b)``-fold label by a uniform absent label."""
    counts = np.bincount(np.asarray(seq, dtype=np.int64), minlength=n + 1)
    heavy = np.flatnonzero(counts[1:] == move.a + move.b) + 1
    absent = np.flatnonzero(counts[1:] == 0) + 1
    if len(heavy) == 0 or len(absent) == 0:
        raise TreeValidationError(f"move {move} does not apply to this sequence")
    x = int(heavy[rng.integers(len(heavy))])
    y = int(absent[rng.integers(len(absent))])
    where = [i for i, v in enumerate(seq) if v == x]
    chosen = set(int(i) for i in rng.choice(where, size=move.a, replace=False))
    return tuple(y if i in chosen else v for i, v in enumerate(seq))


def coupled_cover_sequences(t: TypeVector, move: CoveringMove, rng: np.random.Generator):
    """Codes ``(V_n, V_m)``: ``V_n`` uniform of type ``t``, ``V_m`` uniform of ``move.apply(t)``."""
    if not move.applicable(t):
        raise TreeValidationError(f"move {move} does not apply to type {t}")
    vn = sample_constrained_sequence(t, rng)
    return vn, cover_sequence(vn, t.n, move, rng)


def sample_coupled_cover(t: TypeVector, move: CoveringMove, rng: np.random.Generator) -> tuple[RootedTree, RootedTree]:
    vn, vm = coupled_cover_sequences(t, move, rng)
    return decode_rooted(vn, t.n), decode_rooted(vm, t.n)


def coupled_chain_sequences(t: TypeVector, moves: Sequence[CoveringMove], rng: np.random.Generator) -> list[tuple[int, ...]]:
    """Compose covering moves; returns one code per type along the chain."""
    seqs = [sample_constrained_sequence(t, rng)]
    for move in moves:
        if not move.applicable(t):
            raise TreeValidationError(f"move {move} does not apply to type {t}")
        seqs.append(cover_sequence(seqs[-1], t.n, move, rng))
        t = move.apply(t)
    return seqs
