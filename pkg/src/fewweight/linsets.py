"""F_q-linear sets of PG(r-1, q^n) defined by q-polynomial maps.

A linear set is stored as the blocks of maps defining U, together with its
deduplicated points. A single ``MapTuple`` (f_1, ..., f_r) gives
U = {(f_1(x), ..., f_r(x))}; several planar tuples give the direct sum
U = U_1 + ... + U_t with one independent variable per block.

The weight of a subspace cut out by linear forms is the F_q-dimension of
the x in the domain whose image satisfies every form. It is computed from
the F_p matrix of x -> (forms applied to the image), which for the direct
sum is the horizontal concatenation of one block per variable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import partial

import numpy as np

from ._enum import DEFAULT_BUDGET, check_budget, projective_count, tally_projective
from .finite_field import FieldElement, SubfieldView
from .formulas import gauss_binom, theta
from .linalg import batch_rank_mod_p
from .qpoly import MapTuple, combination_matrices


@dataclass(frozen=True)
class ProjectivePoint:
    coords: tuple[int, ...]

    @classmethod
    def from_vector(cls, ctx, vec) -> "ProjectivePoint":
        vec = [int(v.value if isinstance(v, FieldElement) else v) for v in vec]
        lead = next((v for v in vec if v), 0)
        if not lead:
            raise ValueError("the zero vector is not a projective point")
        inv = ctx.inv(lead)
        return cls(tuple(ctx.mul(inv, v) for v in vec))


def normalize_rows(ctx, vecs) -> np.ndarray:
    """Scale each nonzero row so its first nonzero entry is 1."""
    vecs = np.asarray(vecs, dtype=np.int64)
    nz = vecs != 0
    if not nz.any(axis=1).all():
        raise ValueError("zero vector among rows")
    lead = vecs[np.arange(len(vecs)), nz.argmax(axis=1)]
    return ctx.vmul(vecs, ctx.vinv(lead)[:, None])


def _integer_log(value: int, base: int) -> int:
    k, t = 0, 1
    while t < value:
        t *= base
        k += 1
    if t != value:
        raise AssertionError(f"{value} is not a power of {base}")
    return k


class LinearSet:
    """Points of L_U in canonical order, with weights and the defining blocks."""

    def __init__(self, blocks, points: np.ndarray, weights: np.ndarray):
        self.blocks = tuple(blocks)
        self.view: SubfieldView = self.blocks[0].view
        self.r = sum(b.r for b in self.blocks)
        self.rank = len(self.blocks) * self.view.n
        self.points = np.asarray(points, dtype=np.int64)
        self.weights = np.asarray(weights, dtype=np.int64)
        self.points.setflags(write=False)
        self.weights.setflags(write=False)
        offs = np.cumsum([0] + [b.r for b in self.blocks])
        self.offsets = tuple(int(o) for o in offs[:-1])

    @property
    def ctx(self):
        return self.view.ctx

    @property
    def is_direct_sum(self) -> bool:
        return len(self.blocks) > 1

    def __len__(self):
        return len(self.points)

    def point_list(self) -> list[ProjectivePoint]:
        return [ProjectivePoint(tuple(int(c) for c in row)) for row in self.points]

    def __repr__(self):
        kind = "direct sum of %d" % len(self.blocks) if self.is_direct_sum else self.blocks[0].family
        return (f"LinearSet({kind}, PG({self.r - 1}, {self.view.q}^{self.view.n}), "
                f"rank={self.rank}, points={len(self)})")


def _from_vectors(blocks, ctx, vecs, q) -> LinearSet:
    normed = normalize_rows(ctx, vecs)
    points, counts = np.unique(normed, axis=0, return_counts=True)
    weights = np.array([_integer_log(int(c) + 1, q) for c in counts], dtype=np.int64)
    return LinearSet(blocks, points, weights)


def build_linear_set(maps: MapTuple) -> LinearSet:
    """L_U for U = {(f_1(x), ..., f_r(x)) : x in GF(q^n)}."""
    view = maps.view
    vecs = np.stack([f.values[1:] for f in maps.maps], axis=1)
    if not (vecs != 0).any(axis=1).all():
        raise ValueError("some nonzero x maps to the zero vector; the tuple is not injective")
    return _from_vectors((maps,), view.ctx, vecs, view.q)


def build_direct_sum_set(tuples, budget: int = DEFAULT_BUDGET) -> LinearSet:
    """L_U for U = U_1 + ... + U_t, each U_i given by a planar map tuple."""
    tuples = tuple(tuples)
    if len(tuples) < 2:
        raise ValueError("a direct sum needs t >= 2 blocks")
    view = tuples[0].view
    if any(t.view != view for t in tuples):
        raise ValueError("all blocks must share one subfield view")
    if any(t.r != 3 for t in tuples):
        raise ValueError("direct-sum blocks must be planar (r = 3)")
    order, t = view.order, len(tuples)
    check_budget(order**t, budget, "direct-sum domain")
    idx = np.arange(1, order**t, dtype=np.int64)
    parts = []
    for i, block in enumerate(tuples):
        x = (idx // order ** (t - 1 - i)) % order
        parts.append(np.stack([f.values[x] for f in block.maps], axis=1))
    vecs = np.concatenate(parts, axis=1)
    if not (vecs != 0).any(axis=1).all():
        raise ValueError("some nonzero domain vector maps to the zero vector")
    return _from_vectors(tuples, view.ctx, vecs, view.q)


def is_scattered(L: LinearSet) -> bool:
    return len(L) == theta(L.rank - 1, L.view.q)


def spans_space(L: LinearSet) -> bool:
    return L.ctx.rank(L.points) == L.r


def _as_codes(L: LinearSet, a) -> np.ndarray:
    return np.array([int(c.value if isinstance(c, FieldElement) else c) for c in a],
                    dtype=np.int64)


def form_matrices(L: LinearSet, forms) -> np.ndarray:
    """F_p matrices of x -> sum_j a_j u_j(x) for a batch of forms a: (B, m, t*m)."""
    forms = np.asarray(forms, dtype=np.int64)
    if forms.ndim != 2 or forms.shape[1] != L.r:
        raise ValueError(f"forms must have {L.r} columns")
    mats = [combination_matrices(forms[:, off:off + b.r], b)
            for b, off in zip(L.blocks, L.offsets)]
    return np.concatenate(mats, axis=2)


def hyperplane_weights(L: LinearSet, forms) -> np.ndarray:
    """Weights of the hyperplanes a_1 x_1 + ... + a_r x_r = 0, batched."""
    mats = form_matrices(L, forms)
    ctx = L.ctx
    nullity = mats.shape[2] - batch_rank_mod_p(mats, ctx.p)
    return nullity // L.view.e


def hyperplane_weight(L: LinearSet, a) -> int:
    a = _as_codes(L, a)
    if len(a) != L.r:
        raise ValueError(f"need {L.r} coefficients")
    if not a.any():
        raise ValueError("the zero form does not define a hyperplane")
    return int(hyperplane_weights(L, a[None, :])[0])


def subspace_weight(L: LinearSet, rows) -> int:
    """dim_{F_q}(W cap U) for W the common zero set of independent linear forms."""
    rows = np.array([_as_codes(L, row) for row in rows], dtype=np.int64)
    if rows.ndim != 2 or rows.shape[1] != L.r:
        raise ValueError(f"rows must have {L.r} entries")
    if L.ctx.rank(rows) != len(rows):
        raise ValueError("the defining forms are linearly dependent")
    mats = form_matrices(L, rows)
    stacked = mats.reshape(1, -1, mats.shape[2])
    nullity = stacked.shape[2] - int(batch_rank_mod_p(stacked, L.ctx.p)[0])
    return nullity // L.view.e


def points_on_hyperplane(L: LinearSet, a) -> int:
    """|L cap H| by testing every point against the form."""
    ctx = L.ctx
    a = _as_codes(L, a)
    acc = np.zeros(len(L), dtype=np.int64)
    for j in range(L.r):
        acc = ctx.vadd(acc, ctx.vmul(int(a[j]), L.points[:, j]))
    return int((acc == 0).sum())


def iter_rref(order: int, k: int, r: int):
    """All k x r reduced row echelon matrices of rank k over GF(order)."""
    for pivots in itertools.combinations(range(r), k):
        free = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, r)
                if c not in pivots]
        for values in itertools.product(range(order), repeat=len(free)):
            m = np.zeros((k, r), dtype=np.int64)
            for i, pc in enumerate(pivots):
                m[i, pc] = 1
            for (i, c), v in zip(free, values):
                m[i, c] = v
            yield m


def verify_h_scattered(L: LinearSet, h: int, budget: int = DEFAULT_BUDGET) -> bool:
    """True iff L spans the space and every (h-1)-subspace has weight <= h."""
    if not 1 <= h <= L.r - 1:
        raise ValueError(f"h must lie in [1, r-1] = [1, {L.r - 1}]")
    if not spans_space(L):
        return False
    order = L.view.order
    if h == L.r - 1:
        profile = weight_profile(L, budget=budget)
        return max(profile.counts) <= h
    k = L.r - h
    check_budget(gauss_binom(L.r, k, order), budget, f"({h - 1})-subspaces")
    return all(subspace_weight(L, rows) <= h for rows in iter_rref(order, k, L.r))


@dataclass(frozen=True)
class HyperplaneWeightProfile:
    """Number of hyperplanes of each weight (the t_i)."""

    counts: dict
    r: int
    n: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "counts", {int(k): int(v) for k, v in sorted(self.counts.items())})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def items(self):
        return sorted(self.counts.items())


def weight_profile(L: LinearSet, budget: int = DEFAULT_BUDGET, workers: int = 1) -> HyperplaneWeightProfile:
    if L.r < 2:
        raise ValueError("hyperplane profiles need r >= 2")
    tally = tally_projective(partial(hyperplane_weights, L), L.view.order, L.r,
                             budget=budget, workers=workers, what="hyperplanes")
    if sum(tally.values()) != projective_count(L.view.order, L.r):
        raise AssertionError("hyperplane tally is incomplete")
    return HyperplaneWeightProfile(dict(tally), L.r, L.view.n, L.view.q)
