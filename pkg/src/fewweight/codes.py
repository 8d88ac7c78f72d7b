"""The Hamming-metric codes C_{L_U} and their weight enumerators.

Two independent routes to the enumerator:

* ``weight_enumerator_direct`` multiplies every projective class of
  message vectors against the generator matrix and counts nonzero entries;
* ``weight_enumerator_geometric`` reads the hyperplane weight profile of a
  scattered linear set (kernel dimensions of q-polynomials) and maps a
  hyperplane of weight i to codewords of weight N - theta(i-1).

Both scale projective counts by q^n - 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import partial

import numpy as np

from ._enum import DEFAULT_BUDGET, tally_projective
from .enumerator import WeightEnumerator
from .finite_field import FieldElement, SubfieldView
from .formulas import theta
from .linsets import LinearSet, is_scattered, weight_profile


@dataclass(frozen=True, eq=False)
class GeneratorMatrix:
    """r x N matrix over GF(q^n) of element codes; column j is the j-th point."""

    view: SubfieldView
    entries: np.ndarray
    source: tuple = ()  # the defining map tuples, when known

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64)
        if entries.ndim != 2 or entries.shape[0] < 1:
            raise ValueError("generator matrix needs at least one row")
        if entries.min(initial=0) < 0 or entries.max(initial=0) >= self.view.order:
            raise ValueError("entry outside the field")
        if not (entries != 0).any(axis=0).all():
            raise ValueError("zero column: the code would be degenerate")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def r(self) -> int:
        return self.entries.shape[0]

    @property
    def N(self) -> int:
        return self.entries.shape[1]

    @property
    def ctx(self):
        return self.view.ctx

    def rank(self) -> int:
        return self.ctx.rank(self.entries)

    def permuted(self, perm) -> "GeneratorMatrix":
        return GeneratorMatrix(self.view, self.entries[:, list(perm)], self.source)


def generator_matrix(L: LinearSet) -> GeneratorMatrix:
    G = GeneratorMatrix(L.view, L.points.T, L.blocks)
    if G.rank() != L.r:
        raise ValueError("the linear set does not span the whole space")
    return G


def codeword_weights(G: GeneratorMatrix, messages) -> np.ndarray:
    """Hamming weights of a G for a batch of messages a, shape (B, r)."""
    ctx = G.ctx
    messages = np.asarray(messages, dtype=np.int64)
    acc = np.zeros((len(messages), G.N), dtype=np.int64)
    for j in range(G.r):
        acc = ctx.vadd(acc, ctx.vmul(messages[:, j, None], G.entries[j][None, :]))
    return (acc != 0).sum(axis=1)


def codeword_weight(G: GeneratorMatrix, a) -> int:
    a = [int(c.value if isinstance(c, FieldElement) else c) for c in a]
    if len(a) != G.r:
        raise ValueError(f"need {G.r} message symbols")
    return int(codeword_weights(G, np.array([a]))[0])


def weight_enumerator_direct(G: GeneratorMatrix, budget: int = DEFAULT_BUDGET,
                             workers: int = 1) -> WeightEnumerator:
    tally = tally_projective(partial(codeword_weights, G), G.view.order, G.r,
                             budget=budget, workers=workers, what="codeword classes")
    scale = G.view.order - 1
    counts = {0: 1}
    for w, c in tally.items():
        counts[w] = counts.get(w, 0) + scale * c
    return WeightEnumerator(G.N, G.r, G.view.order, counts)


def weight_enumerator_geometric(L: LinearSet, budget: int = DEFAULT_BUDGET,
                                workers: int = 1) -> WeightEnumerator:
    if not is_scattered(L):
        raise ValueError("the geometric enumerator needs a scattered linear set")
    profile = weight_profile(L, budget=budget, workers=workers)
    N, q = len(L), L.view.q
    counts = {0: 1}
    for i, t in profile.items():
        w = N - theta(i - 1, q)
        if w == 0:
            raise ValueError("a hyperplane contains the whole set; it does not span")
        counts[w] = counts.get(w, 0) + (L.view.order - 1) * t
    return WeightEnumerator(N, L.r, L.view.order, counts)


def minimum_distance(W: WeightEnumerator) -> int:
    nz = W.nonzero_weights()
    if not nz:
        raise ValueError("the trivial code has no minimum distance")
    return min(nz)


def singleton_defect(W: WeightEnumerator) -> int:
    return W.length - W.dimension + 1 - minimum_distance(W)


def is_almost_mds(W: WeightEnumerator) -> bool:
    return singleton_defect(W) == 1


def is_q_divisible(W: WeightEnumerator, q: int) -> bool:
    return all(w % q == 0 for w in W.nonzero_weights())
