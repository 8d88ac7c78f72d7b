"""Linearized (q-)polynomials over GF(q^n) and the known scattered families.

A ``QPolynomial`` sum_i a_i x^(q^i) is an F_q-linear endomorphism of
GF(q^n). Kernel dimensions are read off the en x en matrix of the induced
F_p-linear map, so no elimination over non-prime fields is needed.

The families producing scattered linear sets with respect to hyperplanes
live in ``TABLE1`` as data: per row the exponent pattern, the coefficient
expressions and the arithmetic conditions.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from math import gcd
from typing import Callable, Sequence

import numpy as np

from .finite_field import FieldElement, SubfieldView, norm
from .linalg import batch_rank_mod_p, rank_mod_p


@dataclass(frozen=True, eq=False)
class QPolynomial:
    view: SubfieldView
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.coeffs)
        if len(coeffs) != self.view.n:
            raise ValueError(f"need {self.view.n} coefficients, got {len(coeffs)}")
        for c in coeffs:
            self.view.ctx.check_code(c)
        object.__setattr__(self, "coeffs", coeffs)

    def __eq__(self, other):
        return (isinstance(other, QPolynomial) and self.view == other.view
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.view, self.coeffs))

    @classmethod
    def from_terms(cls, view: SubfieldView, terms) -> "QPolynomial":
        """Build from (coefficient, i) pairs meaning coefficient * x^(q^i).

        Indices are reduced mod n (x^(q^n) = x on GF(q^n)); repeated indices add up.
        """
        ctx = view.ctx
        coeffs = [0] * view.n
        for c, i in terms:
            c = int(c)
            ctx.check_code(c)
            k = i % view.n
            coeffs[k] = ctx.add(coeffs[k], c)
        return cls(view, tuple(coeffs))

    def terms(self) -> list[tuple[int, int]]:
        return [(c, i) for i, c in enumerate(self.coeffs) if c]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __call__(self, x):
        if isinstance(x, FieldElement):
            self.view.ctx._own(x)
            return FieldElement(self.view.ctx, self.eval_code(x.value))
        return self.eval_code(int(x))

    def eval_code(self, x: int) -> int:
        ctx, q = self.view.ctx, self.view.q
        out, xi = 0, x
        for c in self.coeffs:
            if c:
                out = ctx.add(out, ctx.mul(c, xi))
            xi = ctx.pow(xi, q)
        return out

    @cached_property
    def values(self) -> np.ndarray:
        """f(x) for every code x = 0 .. q^n - 1."""
        ctx = self.view.ctx
        out = np.zeros(ctx.order, dtype=np.int64)
        for c, i in self.terms():
            out = ctx.vadd(out, ctx.vmul(c, frobenius_table(self.view, i)))
        out.setflags(write=False)
        return out

    @cached_property
    def fp_matrix(self) -> np.ndarray:
        """Matrix of f as an F_p-linear map on coefficient vectors."""
        ctx = self.view.ctx
        cols = [ctx.coeffs(self.eval_code(ctx.p**j)) for j in range(ctx.m)]
        mat = np.array(cols, dtype=np.int64).T
        mat.setflags(write=False)
        return mat

    def __add__(self, other: "QPolynomial") -> "QPolynomial":
        if other.view != self.view:
            raise ValueError("mixed subfield views")
        ctx = self.view.ctx
        return QPolynomial(self.view, tuple(ctx.add(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, a: int) -> "QPolynomial":
        """Left multiplication by a field element: (a*f)(x) = a*f(x)."""
        ctx = self.view.ctx
        return QPolynomial(self.view, tuple(ctx.mul(a, c) for c in self.coeffs))

    def __repr__(self):
        if self.is_zero():
            return "QPolynomial(0)"
        parts = [f"{c}*x^(q^{i})" for c, i in self.terms()]
        return f"QPolynomial({' + '.join(parts)} over {self.view!r})"


_frob_cache: dict = {}


def frobenius_table(view: SubfieldView, i: int) -> np.ndarray:
    """x^(q^i) for every code x."""
    key = (view, i % view.n)
    table = _frob_cache.get(key)
    if table is None:
        ctx = view.ctx
        table = ctx.vpow(np.arange(ctx.order), view.q ** (i % view.n))
        table.setflags(write=False)
        _frob_cache[key] = table
    return table


def evaluate(f: QPolynomial, x: FieldElement) -> FieldElement:
    return f(x)


def kernel_dim(f: QPolynomial) -> int:
    """dim over F_q of the kernel of f."""
    view = f.view
    nullity = view.ctx.m - rank_mod_p(f.fp_matrix, view.ctx.p)
    if nullity % view.e:
        raise AssertionError("kernel is not an F_q-subspace")
    return nullity // view.e


def rank(f: QPolynomial) -> int:
    return f.view.n - kernel_dim(f)


@dataclass(frozen=True, eq=False)
class MapTuple:
    """The defining maps (f_1, ..., f_r) of a linear set, with provenance."""

    maps: tuple[QPolynomial, ...]
    family: str = "custom"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        maps = tuple(self.maps)
        if not maps:
            raise ValueError("a map tuple needs at least one map")
        view = maps[0].view
        if any(f.view != view for f in maps):
            raise ValueError("all maps must share one subfield view")
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "params", dict(self.params))

    @property
    def view(self) -> SubfieldView:
        return self.maps[0].view

    @property
    def r(self) -> int:
        return len(self.maps)

    def __len__(self):
        return len(self.maps)

    def __getitem__(self, j):
        return self.maps[j]

    def __eq__(self, other):
        return isinstance(other, MapTuple) and self.maps == other.maps

    def __hash__(self):
        return hash(self.maps)

    @cached_property
    def fp_matrices(self) -> np.ndarray:
        """Stack of the F_p matrices of f_1..f_r, shape (r, m, m)."""
        out = np.stack([f.fp_matrix for f in self.maps])
        out.setflags(write=False)
        return out


def monomial_tuple(view: SubfieldView, powers: Sequence[int], family="custom", **params) -> MapTuple:
    """(x^(q^k_1), ..., x^(q^k_r)) for the given exponents k_j."""
    return MapTuple(tuple(QPolynomial.from_terms(view, [(1, k)]) for k in powers), family, params)


def _codes(a, view: SubfieldView) -> list[int]:
    out = []
    for c in a:
        if isinstance(c, FieldElement):
            view.ctx._own(c)
            c = c.value
        out.append(view.ctx.check_code(int(c)))
    return out


def combine(a, maps: MapTuple) -> QPolynomial:
    """sum_j a_j f_j as a single q-polynomial."""
    a = _codes(a, maps.view)
    if len(a) != maps.r:
        raise ValueError(f"need {maps.r} coefficients, got {len(a)}")
    ctx = maps.view.ctx
    coeffs = [0] * maps.view.n
    for aj, f in zip(a, maps.maps):
        if aj:
            coeffs = [ctx.add(c, ctx.mul(aj, fc)) for c, fc in zip(coeffs, f.coeffs)]
    return QPolynomial(maps.view, tuple(coeffs))


def mul_matrices(view: SubfieldView, codes) -> np.ndarray:
    """F_p matrices of y -> a*y for a batch of element codes: shape (..., m, m)."""
    ctx = view.ctx
    basis = _mul_basis(ctx)
    return np.einsum("...k,kij->...ij", ctx.digits(codes), basis) % ctx.p


_mul_basis_cache: dict = {}


def _mul_basis(ctx) -> np.ndarray:
    out = _mul_basis_cache.get(ctx)
    if out is None:
        out = np.stack([ctx.mul_matrix(ctx.p**k) for k in range(ctx.m)])
        out.setflags(write=False)
        _mul_basis_cache[ctx] = out
    return out


def combination_matrices(coeffs, maps: MapTuple) -> np.ndarray:
    """F_p matrices of sum_j a_j f_j for a batch of coefficient rows, shape (B, m, m)."""
    coeffs = np.asarray(coeffs, dtype=np.int64)
    muls = mul_matrices(maps.view, coeffs)  # (B, r, m, m)
    return np.einsum("brij,rjk->bik", muls, maps.fp_matrices) % maps.view.ctx.p


def batch_kernel_dims(coeffs, maps: MapTuple) -> np.ndarray:
    view = maps.view
    mats = combination_matrices(coeffs, maps)
    return (view.ctx.m - batch_rank_mod_p(mats, view.ctx.p)) // view.e


# -- known maximum scattered families ----------------------------------------


class ConditionError(ValueError):
    """A family's arithmetic condition fails for the supplied parameters."""


@dataclass
class _Env:
    view: SubfieldView
    r: int
    s: int
    delta: FieldElement | None
    h: FieldElement | None

    @property
    def q(self):
        return self.view.q

    @property
    def n(self):
        return self.view.n

    @property
    def one(self):
        return self.view.ctx.one

    def need(self, name):
        value = getattr(self, name)
        if value is None:
            raise ConditionError(f"parameter {name} is required for this family")
        return value


@dataclass(frozen=True)
class Table1Row:
    key: str
    n: int | None
    r: int | None
    condition: str
    # per map: list of (coefficient, q-power index)
    pattern: Callable[[_Env], list[list[tuple[FieldElement, int]]]]
    checks: tuple[Callable[[_Env], str | None], ...] = ()


def _gcd_check(env):
    if gcd(env.s, env.n) != 1:
        return f"gcd(s, n) = gcd({env.s}, {env.n}) = {gcd(env.s, env.n)} != 1"


def _r_range(env):
    if not 2 <= env.r <= env.n:
        return f"need 2 <= r <= n, got r={env.r}, n={env.n}"


def _q_odd(env):
    if env.q % 2 == 0:
        return f"q must be odd, got q={env.q}"


def _q_1_mod_3(env):
    if env.q % 3 != 1:
        return f"q must be 1 mod 3, got q={env.q}"


def _q_gt_4(env):
    if env.q <= 4:
        return f"q must exceed 4, got q={env.q}"


def _twist_norm(env):
    delta = env.need("delta")
    if not delta:
        return "delta must be nonzero"
    nd = norm(delta, env.view)
    target = env.view.minus_one_power(env.n * env.r)
    if nd.value == target:
        return (f"N(delta) = {nd.value} equals (-1)^(nr) = {target} in GF({env.q}); "
                "twist condition fails")


def _delta_golden(env):
    d = env.need("delta")
    if d * d + d != env.one:
        return f"delta^2 + delta = {(d * d + d).value}, need 1"


def _delta_sqrt_minus_one(env):
    d = env.need("delta")
    if d * d != -env.one:
        return f"delta^2 = {(d * d).value}, need -1"


def _h_condition(env):
    h = env.need("h")
    v = h ** (env.q**3 + 1)
    if v != -env.one:
        return f"h^(q^3+1) = {v.value}, need -1"


def _delta_present(env):
    if not env.need("delta"):
        return "delta must be nonzero"


def _gabidulin(env):
    return [[(env.one, env.s * j)] for j in range(env.r)]


def _twisted(env):
    d = env.need("delta")
    maps = [[(env.one, env.s * j)] for j in range(1, env.r)]
    maps.append([(env.one, 0), (d, env.s * env.r)])
    return maps


def _row_6_4_cmpz(env):
    d = env.need("delta")
    one = env.one
    return [[(one, 1)], [(one, 2)], [(one, 4)], [(one, 0), (-(d ** (env.q**5)), 3)]]


def _row_6_4_csmz(env):
    d = env.need("delta")
    one = env.one
    return [[(one, 1)], [(one, 3)], [(one, 0), (-one, 2)], [(one, 4), (-d, 0)]]


def _row_6_4_bzz(env):
    h, q, one = env.need("h"), env.q, env.one
    hq1 = h ** (q - 1)
    return [
        [(h ** (q * q - 1), 1), (hq1, 2)],
        [(one, 3)],
        [(one, 1), (-hq1, 4)],
        [(one, 1), (-hq1, 5)],
    ]


def _exponents(*ks):
    def pattern(env):
        return [[(env.one, k * env.s)] for k in ks]
    return pattern


def _row_8_6(env):
    d, one = env.need("delta"), env.one
    return [[(one, 1)], [(one, 2)], [(one, 3)], [(one, 5)], [(one, 6)], [(one, 0), (-d, 4)]]


TABLE1 = {
    row.key: row
    for row in [
        Table1Row("gabidulin", None, None, "gcd(s,n)=1", _gabidulin, (_gcd_check, _r_range)),
        Table1Row("twisted", None, None, "gcd(s,n)=1, N(delta) != (-1)^(nr)", _twisted,
                  (_gcd_check, _r_range, _twist_norm)),
        Table1Row("6-4-cmpz", 6, 4, "q>4, certain choices of delta", _row_6_4_cmpz,
                  (_q_gt_4, _delta_present)),
        Table1Row("6-4-csmz", 6, 4, "q odd, delta^2+delta=1", _row_6_4_csmz,
                  (_q_odd, _delta_golden)),
        Table1Row("6-4-bzz", 6, 4, "q odd, h^(q^3+1)=-1", _row_6_4_bzz, (_q_odd, _h_condition)),
        Table1Row("7-3", 7, 3, "q odd, gcd(s,7)=1", _exponents(0, 1, 3), (_q_odd, _gcd_check)),
        Table1Row("7-4", 7, 4, "q odd, gcd(s,7)=1", _exponents(0, 2, 3, 4), (_q_odd, _gcd_check)),
        Table1Row("8-3", 8, 3, "q=1 mod 3, gcd(s,8)=1", _exponents(0, 1, 3),
                  (_q_1_mod_3, _gcd_check)),
        Table1Row("8-5", 8, 5, "q=1 mod 3, gcd(s,8)=1", _exponents(0, 2, 3, 4, 5),
                  (_q_1_mod_3, _gcd_check)),
        Table1Row("8-6", 8, 6, "q odd, delta^2=-1", _row_8_6, (_q_odd, _delta_sqrt_minus_one)),
    ]
}


def _element(view, value):
    if value is None or isinstance(value, FieldElement):
        if value is not None:
            view.ctx._own(value)
        return value
    return view.ctx(int(value))


def table1_tuple(view: SubfieldView, row: str, *, r: int | None = None, s: int = 1,
                 delta=None, h=None) -> MapTuple:
    """Map tuple for one row of ``TABLE1``, after checking the row's conditions.

    ``delta`` and ``h`` may be field elements or integer element codes.
    Raises ``ConditionError`` naming the failed condition.
    """
    try:
        row_spec = TABLE1[row]
    except KeyError:
        raise ValueError(f"unknown family {row!r}; choose from {sorted(TABLE1)}") from None
    if row_spec.n is not None and view.n != row_spec.n:
        raise ConditionError(f"row {row} needs n={row_spec.n}, got n={view.n}")
    if row_spec.r is not None:
        if r is not None and r != row_spec.r:
            raise ConditionError(f"row {row} has r={row_spec.r}, got r={r}")
        r = row_spec.r
    if r is None:
        raise ValueError("r is required")
    env = _Env(view, r, s, _element(view, delta), _element(view, h))
    for check in row_spec.checks:
        msg = check(env)
        if msg:
            raise ConditionError(f"{row}: {msg}")
    maps = tuple(
        QPolynomial.from_terms(view, [(c.value, k) for c, k in terms])
        for terms in row_spec.pattern(env)
    )
    params = {"s": s}
    if env.delta is not None:
        params["delta"] = env.delta.value
    if env.h is not None:
        params["h"] = env.h.value
    return MapTuple(maps, row, params)


def gabidulin_tuple(view: SubfieldView, r: int, s: int = 1) -> MapTuple:
    """(x, x^(q^s), ..., x^(q^(s(r-1)))) with gcd(s, n) = 1."""
    return table1_tuple(view, "gabidulin", r=r, s=s)


def twisted_gabidulin_tuple(view: SubfieldView, r: int, s: int, delta) -> MapTuple:
    """(x^(q^s), ..., x^(q^(s(r-1))), x + delta x^(q^(sr))) with N(delta) != (-1)^(nr)."""
    return table1_tuple(view, "twisted", r=r, s=s, delta=delta)
