"""Depth laws of uniform random trees and the tools to test them.

Exact laws come from the birthday problem: the depth of the smallest leaf
is one less than the first repeat in an i.i.d. uniform sequence (capped at
``n``), and the depth of a uniform vertex is the first repeat minus two.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

import numpy as np
from scipy import stats as sps

from . import sampling
from .bijection import decode_rooted
from .trees import TypeVector, as_degrees, height, leaves

EXACT_LIMIT = 64


@dataclass(frozen=True)
class Pmf:
    support: tuple[int, ...]
    probs: tuple  # Fractions when exact, floats otherwise

    @classmethod
    def from_mapping(cls, law: Mapping[int, object]) -> "Pmf":
        items = sorted((k, p) for k, p in law.items() if p)
        return cls(tuple(k for k, _ in items), tuple(p for _, p in items))

    @property
    def exact(self) -> bool:
        return all(isinstance(p, Fraction) for p in self.probs)

    def as_dict(self) -> dict:
        return dict(zip(self.support, self.probs))

    def total(self):
        return sum(self.probs) if self.exact else math.fsum(self.probs)

    def shift(self, k: int) -> "Pmf":
        return Pmf(tuple(x + k for x in self.support), self.probs)

    def cdf(self, x: float) -> float:
        return float(sum(p for s, p in zip(self.support, self.probs) if s <= x))

    def floats(self) -> np.ndarray:
        return np.array([float(p) for p in self.probs])


@dataclass
class EmpiricalDist:
    counts: dict[int, int]
    total: int
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_values(cls, values: Iterable[int], meta: dict | None = None) -> "EmpiricalDist":
        c = Counter(int(v) for v in values)
        return cls(dict(sorted(c.items())), sum(c.values()), dict(meta or {}))

    @classmethod
    def merge(cls, parts: Sequence["EmpiricalDist"], meta: dict | None = None) -> "EmpiricalDist":
        c: Counter = Counter()
        for p in parts:
            c.update(p.counts)
        return cls(dict(sorted(c.items())), sum(c.values()), dict(meta or {}))

    def cdf(self, x: float) -> float:
        return sum(k for v, k in self.counts.items() if v <= x) / self.total

    def csv_rows(self) -> list[str]:
        rows = ["value,count,prob"]
        rows += [f"{v},{k},{k / self.total!r}" for v, k in sorted(self.counts.items())]
        return rows


# ---------------------------------------------------------------------------
# Exact birthday laws


def first_repeat_index(seq: Sequence) -> int | None:
    """1-based index of the first entry equal to an earlier one, or ``None``."""
    seen = set()
    for i, x in enumerate(seq, 1):
        if x in seen:
            return i
        seen.add(x)
    return None


def _no_repeat_probs(n: int, upto: int, exact: bool) -> list:
    """``q[j] = P(V_1..V_j distinct)`` for ``j = 0..upto``."""
    one = Fraction(1) if exact else 1.0
    q = [one]
    for j in range(1, upto + 1):
        step = Fraction(n - j + 1, n) if exact else (n - j + 1) / n
        q.append(q[-1] * step)
    return q


def pmf_min_repeat(n: int, exact: bool | None = None) -> Pmf:
    """Law of ``min(I, n)`` where ``I`` is the first repeat of i.i.d. uniforms on ``[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return Pmf((1,), (Fraction(1),))
    exact = n <= EXACT_LIMIT if exact is None else exact
    q = _no_repeat_probs(n, n - 1, exact)
    law = {j: q[j - 1] - q[j] for j in range(2, n)}
    law[n] = q[n - 1]
    return Pmf.from_mapping(law)


def pmf_uniform_vertex_depth(n: int, exact: bool | None = None) -> Pmf:
    """Law of ``I - 2``: depth of a uniform vertex in a uniform rooted tree on ``[n]``."""
    if n < 1:
        raise ValueError("n must be positive")
    exact = n <= EXACT_LIMIT if exact is None else exact
    q = _no_repeat_probs(n, n, exact)
    return Pmf.from_mapping({j: q[j + 1] * (j + 1) / n for j in range(n)})


# ---------------------------------------------------------------------------
# Monte Carlo


def sample_first_repeat(n: int, size: int, rng: np.random.Generator, chunk_cells: int = 2_000_000) -> np.ndarray:
    """``size`` i.i.d. copies of ``I`` for uniform sequences on ``[n]``.

    Draws a block of entries per sample and finds the first repeat with a
    stable sort; the rare rows without a repeat in the block are extended
    one entry at a time.
    """
    width = min(n + 1, int(6 * math.sqrt(n)) + 10)
    rows = max(1, chunk_cells // width)
    out = np.empty(size, dtype=np.int64)
    done = 0
    while done < size:
        r = min(rows, size - done)
        vals = rng.integers(0, n, size=(r, width))
        order = np.argsort(vals, axis=1, kind="stable")
        sv = np.take_along_axis(vals, order, axis=1)
        dup = sv[:, 1:] == sv[:, :-1]
        cand = np.where(dup, order[:, 1:], width)
        first = cand.min(axis=1)
        for i in np.flatnonzero(first == width):
            seen = set(vals[i].tolist())
            k = width
            while True:
                x = int(rng.integers(0, n))
                if x in seen:
                    break
                seen.add(x)
                k += 1
            first[i] = k
        out[done : done + r] = first + 1
        done += r
    return out


def smallest_leaf_depth(t) -> int:
    v = leaves(t)[0]
    k = 0
    parent = t.parent
    while parent[v - 1]:
        v = parent[v - 1]
        k += 1
    return k


def _vertex_depth(parent: tuple[int, ...], v: int) -> int:
    k = 0
    while parent[v - 1]:
        v = parent[v - 1]
        k += 1
    return k


def leaf_depth_samples(size: int, rng: np.random.Generator, n: int) -> np.ndarray:
    """Depth of the smallest leaf of ``size`` uniform trees on ``[n]``."""
    return np.array([smallest_leaf_depth(sampling.sample_uniform_rooted(n, rng)) for _ in range(size)], dtype=np.int64)


def vertex_depth_samples(size: int, rng: np.random.Generator, n: int, mode: str = "birthday") -> np.ndarray:
    """Depth of a uniform vertex in a uniform tree on ``[n]``.

    ``mode="birthday"`` simulates ``I - 2`` from i.i.d. uniforms;
    ``mode="tree"`` samples trees and a vertex and measures the depth.
    """
    if mode == "birthday":
        return sample_first_repeat(n, size, rng) - 2
    if mode == "tree":
        out = np.empty(size, dtype=np.int64)
        for i in range(size):
            t = sampling.sample_uniform_rooted(n, rng)
            out[i] = _vertex_depth(t.parent, int(rng.integers(1, n + 1)))
        return out
    raise ValueError(f"unknown mode {mode!r}")


def joint_leaf_depths(n: int, k: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Raw samples of the depths of the ``k`` smallest leaves (``size x k``, ``-1`` if absent)."""
    out = np.full((size, k), -1, dtype=np.int64)
    for i in range(size):
        t = sampling.sample_uniform_rooted(n, rng)
        for j, v in enumerate(leaves(t)[:k]):
            out[i, j] = _vertex_depth(t.parent, v)
    return out


def empirical_leaf_depth(n: int, N: int, rng: np.random.Generator) -> EmpiricalDist:
    if n < 2:
        raise ValueError("need n >= 2")
    return EmpiricalDist.from_values(leaf_depth_samples(N, rng, n))


# ---------------------------------------------------------------------------
# Rayleigh limit


def rayleigh_sf(x):
    """``P(R >= x)``: ``exp(-x^2/2)`` for ``x >= 0`` and 1 below zero."""
    x = np.asarray(x, dtype=float)
    return np.where(x >= 0, np.exp(-0.5 * np.square(np.maximum(x, 0.0))), 1.0)


def rayleigh_cdf(x):
    return 1.0 - rayleigh_sf(x)


def rayleigh_ks(n: int, N: int, rng: np.random.Generator, mode: str = "birthday") -> float:
    """Kolmogorov-Smirnov distance between ``depth / sqrt(n)`` and the Rayleigh law."""
    if n < 2:
        raise ValueError("need n >= 2")
    x = vertex_depth_samples(N, rng, n, mode) / math.sqrt(n)
    return float(sps.kstest(x, rayleigh_cdf).statistic)


def compare_depth_modes(n: int, N: int, rng_a: np.random.Generator, rng_b: np.random.Generator):
    """Two-sample KS between the birthday and tree simulations of vertex depth."""
    a = vertex_depth_samples(N, rng_a, n, "birthday")
    b = vertex_depth_samples(N, rng_b, n, "tree")
    return sps.ks_2samp(a, b)


# ---------------------------------------------------------------------------
# Goodness of fit and dominance


def chi_square_gof(observed: Mapping, expected_probs: Mapping, min_expected: float = 5.0):
    """Chi-square test of counts against a law, pooling bins with small expectation.

    Bins are pooled in key order until each pooled bin expects at least
    ``min_expected`` observations.  Observations outside the law's support
    make the p-value 0.
    """
    total = sum(observed.values())
    keys = sorted(set(expected_probs) | set(observed))
    if any(observed.get(k, 0) and not expected_probs.get(k, 0) for k in keys):
        return math.inf, 0.0
    keys = [k for k in keys if expected_probs.get(k, 0)]
    obs_bins, exp_bins = [], []
    o = e = 0.0
    for k in keys:
        o += observed.get(k, 0)
        e += float(expected_probs[k]) * total
        if e >= min_expected:
            obs_bins.append(o)
            exp_bins.append(e)
            o = e = 0.0
    if e > 0 or o > 0:
        if obs_bins:
            obs_bins[-1] += o
            exp_bins[-1] += e
        else:
            obs_bins.append(o)
            exp_bins.append(e)
    if len(obs_bins) < 2:
        return 0.0, 1.0
    res = sps.chisquare(obs_bins, exp_bins)
    return float(res.statistic), float(res.pvalue)


def chi_square_uniform(counts: Mapping, categories: Iterable):
    """Chi-square test that ``counts`` is uniform over ``categories`` (no pooling)."""
    cats = list(categories)
    if set(counts) - set(cats):
        return math.inf, 0.0
    if len(cats) < 2:
        return 0.0, 1.0
    res = sps.chisquare([counts.get(c, 0) for c in cats])
    return float(res.statistic), float(res.pvalue)


@dataclass
class DominanceReport:
    support: list[int]
    cdf_a: list[float]
    cdf_b: list[float]
    max_violation: float
    margin: float
    dominates: bool

    def as_dict(self) -> dict:
        return {
            "support": self.support,
            "cdf_a": self.cdf_a,
            "cdf_b": self.cdf_b,
            "max_violation": self.max_violation,
            "margin": self.margin,
            "dominates": self.dominates,
        }


def dominance_report(a: EmpiricalDist, b: EmpiricalDist, alpha: float = 1e-3) -> DominanceReport:
    """Check ``a <=_st b`` empirically: ``F_a(t) >= F_b(t) - margin`` for every ``t``.

    ``margin`` is the sum of the two Dvoretzky-Kiefer-Wolfowitz bands at
    level ``alpha``.
    """
    support = sorted(set(a.counts) | set(b.counts))
    fa = [a.cdf(t) for t in support]
    fb = [b.cdf(t) for t in support]
    violation = max([0.0, *(y - x for x, y in zip(fa, fb))])
    margin = sum(math.sqrt(math.log(2 / alpha) / (2 * d.total)) for d in (a, b))
    return DominanceReport(support, fa, fb, violation, margin, violation <= margin)


# ---------------------------------------------------------------------------
# Heights


@dataclass(frozen=True)
class Family:
    kind: str
    n: int | None = None
    type: TypeVector | None = None
    degrees: tuple[int, ...] | None = None
    roots: tuple[int, ...] | None = None

    def __post_init__(self):
        ok = {
            "rooted": self.n is not None,
            "type": self.type is not None,
            "degree": self.degrees is not None,
            "forest": self.n is not None and bool(self.roots),
        }
        if not ok.get(self.kind, False):
            raise ValueError(f"invalid family specification {self}")

    def sample(self, rng: np.random.Generator):
        if self.kind == "rooted":
            return sampling.sample_uniform_rooted(self.n, rng)
        if self.kind == "type":
            return sampling.sample_uniform_type(self.type, rng)
        if self.kind == "degree":
            return sampling.sample_uniform_degree(as_degrees(self.degrees), rng)
        return sampling.sample_uniform_forest(self.n, self.roots, rng)


def height_samples(size: int, rng: np.random.Generator, family: Family) -> np.ndarray:
    return np.array([height(family.sample(rng)) for _ in range(size)], dtype=np.int64)


def height_histogram(family: Family, N: int, rng: np.random.Generator) -> EmpiricalDist:
    return EmpiricalDist.from_values(height_samples(N, rng, family))


def coupled_heights(t: TypeVector, move, size: int, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Heights of coupled trees of types ``t`` and ``move.apply(t)``."""
    hn = np.empty(size, dtype=np.int64)
    hm = np.empty(size, dtype=np.int64)
    for i in range(size):
        vn, vm = sampling.coupled_cover_sequences(t, move, rng)
        hn[i] = height(decode_rooted(vn, t.n))
        hm[i] = height(decode_rooted(vm, t.n))
    return hn, hm
