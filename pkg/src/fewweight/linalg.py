"""Exact linear algebra over prime fields F_p.

Matrices are numpy integer arrays with entries in [0, p). Every routine
works on a copy, so callers' arrays are never modified.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def inverse_table(p: int) -> np.ndarray:
    """Multiplicative inverses mod p, with 0 mapped to 0."""
    table = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        table[a] = pow(a, p - 2, p)
    return table


def rref_mod_p(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` over F_p and its pivot columns."""
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    inv = inverse_table(p)
    rows, cols = m.shape
    pivots = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(m[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + nz[0]
        if piv != row:
            m[[row, piv]] = m[[piv, row]]
        m[row] = m[row] * inv[m[row, col]] % p
        factors = m[:, col].copy()
        factors[row] = 0
        m = (m - factors[:, None] * m[row][None, :]) % p
        pivots.append(col)
        row += 1
    return m, pivots


def rank_mod_p(a, p: int) -> int:
    return len(rref_mod_p(a, p)[1])


def nullspace_mod_p(a, p: int) -> np.ndarray:
    """Basis of the right kernel {v : a v = 0}, one vector per row."""
    m, pivots = rref_mod_p(a, p)
    cols = m.shape[1]
    free = [c for c in range(cols) if c not in pivots]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for k, f in enumerate(free):
        basis[k, f] = 1
        for i, pc in enumerate(pivots):
            basis[k, pc] = -m[i, f] % p
    return basis


def inv_mod_p(a, p: int) -> np.ndarray:
    m = np.array(a, dtype=np.int64) % p
    size = m.shape[0]
    if m.shape != (size, size):
        raise ValueError("inverse needs a square matrix")
    aug, pivots = rref_mod_p(np.hstack([m, np.eye(size, dtype=np.int64)]), p)
    if pivots[:size] != list(range(size)):
        raise ValueError("matrix is singular mod %d" % p)
    return aug[:, size:]


def batch_rank_mod_p(a, p: int) -> np.ndarray:
    """Ranks of a stack of matrices with shape (B, rows, cols)."""
    m = np.array(a, dtype=np.int64) % p
    if m.ndim != 3:
        raise ValueError("expected a (B, rows, cols) stack")
    batch, rows, cols = m.shape
    inv = inverse_table(p)
    row = np.zeros(batch, dtype=np.int64)
    row_ids = np.arange(rows)
    for col in range(cols):
        live = np.nonzero(row < rows)[0]
        if live.size == 0:
            break
        sub = m[live]
        mask = (sub[:, :, col] != 0) & (row_ids[None, :] >= row[live][:, None])
        has = mask.any(axis=1)
        if not has.any():
            continue
        b = live[has]
        piv = mask[has].argmax(axis=1)
        r0 = row[b]
        top = m[b, r0].copy()
        m[b, r0] = m[b, piv]
        m[b, piv] = top
        pivot_rows = m[b, r0] * inv[m[b, r0, col]][:, None] % p
        m[b, r0] = pivot_rows
        factors = m[b, :, col].copy()
        factors[np.arange(b.size), r0] = 0
        m[b] = (m[b] - factors[:, :, None] * pivot_rows[:, None, :]) % p
        row[b] += 1
    return row
