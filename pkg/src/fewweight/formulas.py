"""Closed forms: theta, Gaussian binomials, MRD rank distribution, t-values,
and the predicted enumerators of the r-weight and three-weight codes.

All arithmetic is in Python integers; every division is checked to be exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .enumerator import PredictedEnumerator, Report, verify  # noqa: F401


def exact_div(a: int, b: int, what: str = "division") -> int:
    quo, rem = divmod(a, b)
    if rem:
        raise ArithmeticError(f"{what}: {a} / {b} leaves remainder {rem}")
    return quo


def theta(i: int, q: int) -> int:
    """Number of points of PG(i, q); theta(-1) = 0."""
    if i < -1:
        raise ValueError(f"theta is defined for i >= -1, got {i}")
    return exact_div(q ** (i + 1) - 1, q - 1, "theta")


def gauss_binom(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^n."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got n={n}, k={k}")
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return exact_div(num, den, "Gaussian binomial")


def mrd_weight_distribution(n: int, d: int, q: int) -> list[int]:
    """Rank distribution [A_d, ..., A_n] of an MRD code in GF(q)^(n x n).

    A_{d+l} = [n, d+l] sum_{t=0}^{l} (-1)^(l-t) [l+d, l-t] q^C(l-t, 2) (q^(n(t+1)) - 1).
    """
    if not 1 <= d <= n:
        raise ValueError(f"need 1 <= d <= n, got d={d}, n={n}")
    out = []
    for l in range(n - d + 1):
        s = 0
        for t in range(l + 1):
            s += ((-1) ** (l - t) * gauss_binom(l + d, l - t, q) * q ** comb(l - t, 2)
                  * (q ** (n * (t + 1)) - 1))
        out.append(gauss_binom(n, d + l, q) * s)
    return out


@dataclass(frozen=True)
class TValues:
    """Numbers of hyperplanes of weight (r-3)n/3 + i, i = 0, 1, 2."""

    t0: int
    t1: int
    t2: int
    r: int
    n: int
    q: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.t0, self.t1, self.t2)

    @property
    def base_weight(self) -> int:
        return (self.r - 3) * self.n // 3


def _check_2scattered(r, n, q):
    if q < 2:
        raise ValueError("q must be at least 2")
    if n < 3:
        raise ValueError(f"maximum 2-scattered sets need n >= 3, got n={n}")
    if r < 3:
        raise ValueError(f"need r >= 3, got r={r}")
    if (r * n) % 3:
        raise ValueError(f"3 must divide rn = {r * n}")


def t0_star(r: int, n: int, q: int) -> int:
    m = r * n // 3
    return (q ** (2 * m + 3) - q ** (2 * m + 2) - q ** (2 * m + 1) + q ** (2 * m)
            - q ** (m + n + 2) + q ** (m + 3) - q ** (m + 1) + q ** (m + n)
            + q ** (2 * n) - q ** (n + 2) - q ** (n + 1) + q**3)


def t_values(r: int, n: int, q: int) -> TValues:
    _check_2scattered(r, n, q)
    m = r * n // 3
    qm = q**m
    t0 = exact_div((qm - 1) * t0_star(r, n, q), (q - 1) ** 2 * (q + 1) * (q**n - 1), "t0")
    t1 = exact_div((qm - 1) * (q ** (m + 2) - q ** (m + 1) - q**n + q**2), (q - 1) ** 2 * q, "t1")
    t2 = exact_div((q**n - q) * (qm - 1), (q - 1) ** 2 * q * (q + 1), "t2")
    total = exact_div(q ** (n * r) - 1, q**n - 1, "hyperplane count")
    if t0 != total - t1 - t2:
        raise ArithmeticError(f"t0 = {t0} disagrees with the complement {total - t1 - t2}")
    if min(t0, t1, t2) <= 0:
        raise ArithmeticError("t-values must be positive")
    return TValues(t0, t1, t2, r, n, q)


def counting_identities(profile: dict, num_points: int, r: int, n: int, q: int):
    """The three hyperplane / point-hyperplane / point-pair-hyperplane counts.

    ``profile`` maps hyperplane weight w to its number of hyperplanes; each
    such hyperplane meets the (scattered) set in theta(w-1) points. Returns
    three (lhs, rhs) pairs.
    """
    Q = q**n
    sizes = {w: theta(w - 1, q) for w in profile}
    rows = [
        (sum(profile.values()), exact_div(Q**r - 1, Q - 1)),
        (sum(sizes[w] * t for w, t in profile.items()),
         num_points * exact_div(Q ** (r - 1) - 1, Q - 1)),
        (sum(sizes[w] * (sizes[w] - 1) * t for w, t in profile.items()),
         num_points * (num_points - 1) * exact_div(Q ** (r - 2) - 1, Q - 1)),
    ]
    return rows


def predict_full_scattered(n: int, r: int, q: int) -> PredictedEnumerator:
    """Enumerator of C_{L_U} for L_U scattered w.r.t. hyperplanes in PG(r-1, q^n)."""
    if not 1 <= r <= n:
        raise ValueError(f"need 1 <= r <= n, got r={r}, n={n}")
    N = theta(n - 1, q)
    d = n - r + 1
    dist = mrd_weight_distribution(n, d, q)  # dist[k - d] = A_k
    counts = {0: 1}
    for i in range(r):
        counts[N - theta(i - 1, q)] = dist[n - i - d]
    return PredictedEnumerator(N, r, q**n, counts, source="h=r-1 (MRD distribution)")


def predict_2scattered(r: int, n: int, q: int) -> PredictedEnumerator:
    """Enumerator of C_{L_U} for L_U maximum 2-scattered in PG(r-1, q^n)."""
    tv = t_values(r, n, q)
    N = theta(r * n // 3 - 1, q)
    k = tv.base_weight
    counts = {0: 1}
    for i, t in enumerate(tv.as_tuple()):
        w = N - theta(k + i - 1, q)
        counts[w] = counts.get(w, 0) + (q**n - 1) * t
    return PredictedEnumerator(N, r, q**n, counts, source="h=2 (t-values)")
