"""Enumeration of projective coefficient classes and partitioned tallies."""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from typing import Callable

import numpy as np

DEFAULT_BUDGET = 2**26
CHUNK = 4096


class BudgetExceeded(RuntimeError):
    """An exhaustive enumeration would exceed the configured budget."""


def check_budget(count: int, budget: int, what: str) -> None:
    if count > budget:
        raise BudgetExceeded(f"{what}: {count} items exceeds budget {budget}")


def projective_count(order: int, r: int) -> int:
    return (order**r - 1) // (order - 1)


def normalized_vectors(order: int, r: int, start: int, stop: int) -> np.ndarray:
    """Rows start..stop-1 of the canonical list of normalized vectors.

    The list holds every nonzero vector of GF(order)^r whose first nonzero
    entry is 1, ordered by leading position and then lexicographically.
    """
    out = []
    offset = 0
    for lead in range(r):
        size = order ** (r - 1 - lead)
        lo, hi = max(start, offset), min(stop, offset + size)
        if lo < hi:
            idx = np.arange(lo - offset, hi - offset, dtype=np.int64)
            block = np.zeros((hi - lo, r), dtype=np.int64)
            block[:, lead] = 1
            free = r - 1 - lead
            for k in range(free):
                block[:, lead + 1 + k] = (idx // order ** (free - 1 - k)) % order
            out.append(block)
        offset += size
        if offset >= stop:
            break
    if not out:
        return np.zeros((0, r), dtype=np.int64)
    return np.concatenate(out)


def _run_range(args):
    fn, order, r, start, stop = args
    tally = Counter()
    for lo in range(start, stop, CHUNK):
        vecs = normalized_vectors(order, r, lo, min(stop, lo + CHUNK))
        vals, counts = np.unique(fn(vecs), return_counts=True)
        for v, c in zip(vals, counts):
            tally[int(v)] += int(c)
    return tally


def tally_projective(fn: Callable[[np.ndarray], np.ndarray], order: int, r: int,
                     budget: int = DEFAULT_BUDGET, workers: int = 1, what="enumeration") -> Counter:
    """Tally fn over all projective classes of GF(order)^r.

    ``fn`` maps a (B, r) batch of normalized vectors to B integers. With
    ``workers > 1`` the index range is split into contiguous slices, each
    tallied in its own process; the merge is a plain sum, so the result
    does not depend on the worker count. ``fn`` must be picklable then.
    """
    total = projective_count(order, r)
    check_budget(total, budget, what)
    if workers <= 1:
        return _run_range((fn, order, r, 0, total))
    bounds = np.linspace(0, total, workers + 1).astype(np.int64)
    jobs = [(fn, order, r, int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    merged = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        for part in pool.map(_run_range, jobs):
            merged.update(part)
    return merged
