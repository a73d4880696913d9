"""Reproducible random streams.

All randomness comes from numpy's ``PCG64DXSM`` bit generator (128-bit
state), seeded through ``SeedSequence(seed, spawn_key=(stream,))`` so that
independent sub-streams can be derived from one user seed.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

BITGEN = "PCG64DXSM"
NUMPY_VERSION = np.__version__
SEED_ENV = "TREECODE_SEED"


def default_seed() -> int:
    return int(os.environ.get(SEED_ENV, "0"))


def make_rng(seed: int | None = None, stream: int = 0) -> np.random.Generator:
    if seed is None:
        seed = default_seed()
    ss = np.random.SeedSequence(seed, spawn_key=(stream,))
    return np.random.Generator(np.random.PCG64DXSM(ss))


def metadata(seed: int, stream: int = 0) -> dict:
    return {"seed": seed, "stream": stream}


def split_counts(total: int, workers: int) -> list[int]:
    base, extra = divmod(total, workers)
    return [base + (i < extra) for i in range(workers)]


def _run_one(fn, size, seed, stream, args):
    return fn(size, make_rng(seed, stream), *args)


def run_streams(fn: Callable, total: int, seed: int, workers: int = 1, args: tuple = ()) -> list:
    """Call ``fn(size, rng, *args)`` once per worker on stream ``i``; results in worker order.

    ``fn`` must be picklable (a module-level function) when ``workers > 1``.
    Results depend on ``(seed, workers)`` only, never on scheduling.
    """
    sizes = split_counts(total, workers)
    if workers == 1:
        return [_run_one(fn, sizes[0], seed, 0, args)]
    with ProcessPoolExecutor(workers) as ex:
        futs = [ex.submit(_run_one, fn, s, seed, i, args) for i, s in enumerate(sizes)]
        return [f.result() for f in futs]
