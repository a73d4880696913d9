"""Acceptance checks, grouped into suites runnable from the CLI and from pytest.

Each check returns a :class:`Result`.  Randomized checks use pinned seeds and
record a SHA-256 digest of their raw output so a rerun can be compared
byte for byte.
"""

from __future__ import annotations

import hashlib
import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import oracle
from .bijection import (
    decode_degree,
    decode_forest,
    decode_marked,
    decode_rooted,
    decode_unrooted,
    encode_degree,
    encode_forest,
    encode_marked,
    encode_rooted,
    encode_unrooted,
)
from .growth import (
    code_for_step,
    decode_modified,
    encode_modified,
    grow_random,
    grow_step,
    initial_dary,
    multiset_from_indices,
    shape_internal_sets,
    uniform_multiset,
    unlabel_internal,
)
from .rng import make_rng
from .sampling import CoveringMove, coupled_cover_sequences
from .statistics import (
    chi_square_gof,
    chi_square_uniform,
    first_repeat_index,
    leaf_depth_samples,
    pmf_min_repeat,
    pmf_uniform_vertex_depth,
    rayleigh_ks,
    smallest_leaf_depth,
)
from .trees import MarkedTree, TypeVector, is_valid, iter_subtree_leaves, type_of

SEED = 20221117
ALPHA = 1e-3
RAYLEIGH_N = 10_000
RAYLEIGH_SAMPLES = 100_000
RAYLEIGH_THRESHOLD = 0.02  # artifact calibration; only convergence is known
LEAF_MC_N = 100
LEAF_MC_SAMPLES = 100_000
COUPLING_N = 50
COUPLING_SAMPLES = 100_000
ADDED_VERTEX_RUNS = 100_000

COUPLING_CASES = [
    (TypeVector.from_mapping({0: 25, 1: 1, 2: 24}), CoveringMove(1, 1)),
    (TypeVector.from_mapping({0: 15, 1: 24, 2: 10, 5: 1}), CoveringMove(2, 3)),
    (TypeVector.from_mapping({0: 37, 1: 4, 5: 9}), CoveringMove(1, 4)),
]
COUPLING_MARGINAL_CASES = [
    (TypeVector.from_mapping({0: 3, 2: 2}), CoveringMove(1, 1)),
    (TypeVector.from_mapping({0: 4, 4: 1}), CoveringMove(1, 3)),
]
GROWTH_CASES = [(2, 2), (2, 3), (3, 2)]

QUATERNARY_CODE = (2, 2, 3, 2, 4, 4, 1, 1, 2, 1, 3, 4, 3, 4, 1, 3)
QUATERNARY_GROWN_CODE = (2, 2, 5, 5, 3, 2, 4, 4, 5, 1, 5, 1, 2, 1, 3, 4, 3, 4, 1, 3)


@dataclass
class Result:
    criterion: str
    passed: bool
    detail: str
    digest: str | None = None

    def line(self) -> str:
        return f"{'PASS' if self.passed else 'FAIL'}  {self.criterion}: {self.detail}"


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(np.ascontiguousarray(p).tobytes() if isinstance(p, np.ndarray) else repr(p).encode())
    return h.hexdigest()


# ---------------------------------------------------------------------------
# Exhaustive checks


def cayley_count(max_n: int = 6) -> Result:
    bad = []
    for n in range(1, max_n + 1):
        decoded = {decode_rooted(v, n) for v in itertools.product(range(1, n + 1), repeat=n - 1)}
        if len(decoded) != n ** (n - 1) or not all(is_valid(t) for t in decoded):
            bad.append(n)
        elif decoded != set(oracle.enumerate_rooted(n)):
            bad.append(n)
    return Result("1 cayley count", not bad, f"n=1..{max_n}" + (f" failed at {bad}" if bad else " all n^(n-1)"))


def _roundtrip_rooted(n: int) -> bool:
    codes = itertools.product(range(1, n + 1), repeat=n - 1)
    if any(encode_rooted(decode_rooted(v, n)) != v for v in codes):
        return False
    return all(decode_rooted(encode_rooted(t), n) == t for t in oracle.enumerate_rooted(n))


def _roundtrip_unrooted(n: int) -> bool:
    images = set()
    for v in itertools.product(range(1, n + 1), repeat=n - 2):
        t = decode_unrooted(v, n)
        images.add(t)
        if encode_unrooted(t) != v:
            return False
    trees = set(oracle.enumerate_unrooted(n))
    return images == trees and len(trees) == oracle.count_unrooted(n) and all(
        decode_unrooted(encode_unrooted(t), n) == t for t in trees
    )


def _roundtrip_forests(n: int) -> bool:
    for s in range(1, n + 1):
        for S in itertools.combinations(range(1, n + 1), s):
            if s == n:
                codes = [()]
            else:
                codes = (
                    (first, *rest)
                    for first in S
                    for rest in itertools.product(range(1, n + 1), repeat=n - s - 1)
                )
            images = set()
            for v in codes:
                f = decode_forest(v, n, S)
                images.add(f)
                if encode_forest(f) != v:
                    return False
            if len(images) != oracle.count_forests(n, s):
                return False
            if any(decode_forest(encode_forest(f), n, S) != f for f in oracle.enumerate_forests(n, S)):
                return False
    return True


def _roundtrip_marked(n: int, r: int) -> bool:
    images = set()
    for v in itertools.product(range(1, n + 1), repeat=n + r - 1):
        mt = decode_marked(v, r, n)
        images.add(mt)
        if encode_marked(mt) != v:
            return False
    pairs = {MarkedTree(t, marks) for t in oracle.enumerate_rooted(n) for marks in itertools.product(range(1, n + 1), repeat=r)}
    if images != pairs or len(pairs) != oracle.count_marked(n, r):
        return False
    return all(decode_marked(encode_marked(x), r, n) == x for x in pairs)


def _roundtrip_degree(d) -> bool:
    images = set()
    for v in oracle.degree_code_space(d):
        t = decode_degree(v, d)
        images.add(t)
        if encode_degree(t) != v:
            return False
    trees = set(oracle.enumerate_degree_trees(d))
    return images == trees and len(trees) == oracle.count_degree(d)


def round_trips() -> Result:
    failures = []
    for n in range(1, 7):
        if not _roundtrip_rooted(n):
            failures.append(f"rooted n={n}")
        if n >= 2 and not _roundtrip_unrooted(n):
            failures.append(f"unrooted n={n}")
        if not _roundtrip_forests(n):
            failures.append(f"forest n={n}")
    for n in range(1, 5):
        for r in (1, 2):
            if not _roundtrip_marked(n, r):
                failures.append(f"marked n={n} r={r}")
    marked_27 = len({decode_marked(v, 1, 3) for v in itertools.product(range(1, 4), repeat=3)})
    if marked_27 != 27:
        failures.append(f"marked n=3 r=1 count {marked_27}")
    degs = list(oracle.degree_sequences(7))
    for d in degs:
        if not _roundtrip_degree(d):
            failures.append(f"degree {d}")
    detail = "rooted/unrooted/forest n<=6, marked n<=4 r<=2 (27 at n=3,r=1), " f"{len(degs)} degree sequences m+L<=7"
    return Result("2 round trips", not failures, detail + (f"; failed: {failures}" if failures else ""))


def type_formula(max_n: int = 7) -> Result:
    bad = []
    checked = 0
    for n in range(1, max_n + 1):
        hist = oracle.type_histogram(n)
        types = oracle.all_types(n)
        if set(hist) - set(types):
            bad.append(f"n={n}: unexpected type")
        for t in types:
            checked += 1
            if oracle.count_type(t) != hist.get(t, 0):
                bad.append(f"{t}")
    return Result("3 type formula", not bad, f"{checked} types, n<={max_n}" + (f"; mismatches {bad}" if bad else " all match"))


def forest_formula(max_n: int = 6) -> Result:
    bad = []
    for n in range(1, max_n + 1):
        for s in range(1, n + 1):
            for S in itertools.combinations(range(1, n + 1), s):
                if sum(1 for _ in oracle.enumerate_forests(n, S)) != oracle.count_forests(n, s):
                    bad.append((n, S))
    return Result("4 forest formula", not bad, f"n<={max_n}, all root sets" + (f"; failed {bad[:5]}" if bad else " match s*n^(n-s-1)"))


def vertex_depth_identity() -> Result:
    bad = [n for n in range(2, 7) if oracle.exact_vertex_depth_distribution(n) != pmf_uniform_vertex_depth(n).as_dict()]
    return Result("6 uniform-vertex depth identity", not bad, "exact rationals n=2..6" + (f"; failed {bad}" if bad else ""))


def modified_roundtrip() -> Result:
    failures = []
    for d in oracle.degree_sequences(7):
        for v in oracle.degree_code_space(d):
            if encode_modified(decode_modified(v, d)) != v:
                failures.append(d)
                break
        else:
            if any(decode_modified(encode_modified(t), d) != t for t in oracle.enumerate_degree_trees(d)):
                failures.append(d)
    t = decode_degree(QUATERNARY_CODE, (4, 4, 4, 4))
    grown = grow_step(t, multiset_from_indices(t, [3, 3, 7, 8]))
    worked_ok = (
        code_for_step(t, [3, 3, 7, 8]) == QUATERNARY_GROWN_CODE
        and decode_modified(QUATERNARY_GROWN_CODE, (4,) * 5) == grown
        and encode_modified(grown) == QUATERNARY_GROWN_CODE
    )
    if not worked_ok:
        failures.append("worked 20-entry example")
    return Result("11 modified-bijection round trip", not failures, "all S_d' with m+1+L'<=7 and the worked example" + (f"; failed {failures}" if failures else ""))


# ---------------------------------------------------------------------------
# Randomized checks


def leaf_depth_identity(seed: int = SEED) -> Result:
    bad = [n for n in range(2, 7) if oracle.exact_leaf_depth_distribution(n) != pmf_min_repeat(n).shift(-1).as_dict()]
    depths = leaf_depth_samples(LEAF_MC_SAMPLES, make_rng(seed, 5), LEAF_MC_N)
    counts = Counter(depths.tolist())
    _, p = chi_square_gof(counts, pmf_min_repeat(LEAF_MC_N).shift(-1).as_dict())
    ok = not bad and p > ALPHA
    detail = f"exact n=2..6 {'ok' if not bad else f'failed {bad}'}; MC n={LEAF_MC_N} N={LEAF_MC_SAMPLES} chi2 p={p:.4g} (> {ALPHA})"
    return Result("5 smallest-leaf depth identity", ok, detail, _digest(depths))


def rayleigh_limit(seed: int = SEED) -> Result:
    ks = rayleigh_ks(RAYLEIGH_N, RAYLEIGH_SAMPLES, make_rng(seed, 7))
    return Result(
        "7 rayleigh limit",
        ks < RAYLEIGH_THRESHOLD,
        f"KS={ks:.5f} at n={RAYLEIGH_N}, N={RAYLEIGH_SAMPLES} (threshold {RAYLEIGH_THRESHOLD})",
        _digest(ks),
    )


def _coupled_pathwise(t: TypeVector, move: CoveringMove, size: int, rng) -> tuple[int, np.ndarray]:
    n = t.n
    violations = 0
    rec = np.empty((size, 4), dtype=np.int64)
    for i in range(size):
        vn, vm = coupled_cover_sequences(t, move, rng)
        in_ = first_repeat_index(vn) or n
        im = first_repeat_index(vm) or n
        dn = smallest_leaf_depth(decode_rooted(vn, n))
        dm = smallest_leaf_depth(decode_rooted(vm, n))
        rec[i] = (in_, im, dn, dm)
        if in_ > im or dn > dm:
            violations += 1
    return violations, rec


def _coupled_marginals(t: TypeVector, move: CoveringMove, rng) -> tuple[float, float]:
    target = move.apply(t)
    trees_n = [x for x in oracle.enumerate_rooted(t.n) if type_of(x) == t]
    trees_m = [x for x in oracle.enumerate_rooted(t.n) if type_of(x) == target]
    N = 200 * max(len(trees_n), len(trees_m))
    cn: Counter = Counter()
    cm: Counter = Counter()
    for _ in range(N):
        vn, vm = coupled_cover_sequences(t, move, rng)
        cn[decode_rooted(vn, t.n)] += 1
        cm[decode_rooted(vm, t.n)] += 1
    return chi_square_uniform(cn, trees_n)[1], chi_square_uniform(cm, trees_m)[1]


def coupling(seed: int = SEED) -> Result:
    parts = []
    digests = []
    ok = True
    for k, (t, move) in enumerate(COUPLING_CASES):
        v, rec = _coupled_pathwise(t, move, COUPLING_SAMPLES, make_rng(seed, 80 + k))
        ok &= v == 0
        digests.append(rec)
        parts.append(f"move ({move.a},{move.b}): {v} violations")
    for k, (t, move) in enumerate(COUPLING_MARGINAL_CASES):
        pn, pm = _coupled_marginals(t, move, make_rng(seed, 90 + k))
        ok &= pn > ALPHA and pm > ALPHA
        digests.append((pn, pm))
        parts.append(f"n=5 {t} marginals p=({pn:.3g}, {pm:.3g})")
    return Result("8 coupling", ok, f"n={COUPLING_N}, N={COUPLING_SAMPLES}: " + "; ".join(parts), _digest(*digests))


def growth_uniformity(seed: int = SEED) -> Result:
    parts = []
    ok = True
    record = []
    for k, (d, m) in enumerate(GROWTH_CASES):
        shapes = Counter(unlabel_internal(t) for t in oracle.enumerate_degree_trees((d,) * m))
        ok &= set(shapes.values()) == {math.factorial(m)}
        rng = make_rng(seed, 100 + k)
        N = 200 * len(shapes)
        observed: Counter = Counter()
        mismatches = 0
        for _ in range(N):
            t = initial_dary(d)
            for _ in range(m - 1):
                idx = uniform_multiset(rng, t.m + t.L, d)
                grown = grow_step(t, multiset_from_indices(t, idx))
                if grown != decode_modified(code_for_step(t, idx), t.degrees.extended(d)) or not is_valid(grown):
                    mismatches += 1
                t = grown
            observed[unlabel_internal(t)] += 1
        _, p = chi_square_uniform(observed, shapes)
        ok &= p > ALPHA and mismatches == 0
        record.append(sorted(observed.items(), key=repr))
        parts.append(f"d={d} m={m}: {len(shapes)} shapes, N={N}, p={p:.3g}, step mismatches {mismatches}")
    return Result("9 growth uniformity", ok, "; ".join(parts), _digest(record))


def added_vertex_law(seed: int = SEED) -> Result:
    rng = make_rng(seed, 110)
    by_shape: dict = defaultdict(Counter)
    for _ in range(ADDED_VERTEX_RUNS):
        t = initial_dary(2)
        t, _ = grow_random(t, 2, rng)
        t, _ = grow_random(t, 2, rng)
        by_shape[unlabel_internal(t)][iter_subtree_leaves(t)[3]] += 1
    pvals = {s: chi_square_uniform(c, shape_internal_sets(s))[1] for s, c in by_shape.items()}
    worst = min(pvals.values())
    ok = len(by_shape) == 15 and worst > ALPHA
    record = sorted(((repr(s), sorted(map(sorted, c.elements()))) for s, c in by_shape.items()))
    return Result(
        "10 added-vertex law",
        ok,
        f"{len(by_shape)} shapes of T_3 over {ADDED_VERTEX_RUNS} runs, min p={worst:.3g} (> {ALPHA})",
        _digest(repr(record)),
    )


RANDOMIZED: dict[str, Callable[..., Result]] = {
    "5": leaf_depth_identity,
    "7": rayleigh_limit,
    "8": coupling,
    "9": growth_uniformity,
    "10": added_vertex_law,
}


def determinism(first_runs: dict[str, Result] | None = None, seed: int = SEED) -> Result:
    """Rerun every randomized check at the same seed and compare output digests."""
    first_runs = first_runs or {k: f(seed) for k, f in RANDOMIZED.items()}
    differing = [k for k, f in RANDOMIZED.items() if f(seed).digest != first_runs[k].digest]
    return Result("12 determinism", not differing, f"{len(RANDOMIZED)} randomized checks rerun" + (f"; differ: {differing}" if differing else ", digests identical"))


SUITES: dict[str, list[Callable[[], Result]]] = {
    "bijections": [cayley_count, round_trips, modified_roundtrip],
    "counts": [type_formula, forest_formula],
    "identities": [leaf_depth_identity, vertex_depth_identity],
    "rayleigh": [rayleigh_limit],
    "coupling": [coupling],
    "growth": [growth_uniformity, added_vertex_law],
    "determinism": [determinism],
}


def run_suite(name: str) -> list[Result]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    return [check() for check in SUITES[name]]
