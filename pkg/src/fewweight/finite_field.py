"""Arithmetic in GF(p^m) with a deterministic modulus, plus subfield views.

Elements are handled internally as integer codes: the coefficient vector
(c_0, ..., c_{m-1}) of the polynomial representative is read as base-p
digits, low degree first. ``FieldElement`` wraps a code for the public,
operator-overloaded API; the bulk routines (``vmul``, ``vadd``, ...) work on
numpy arrays of codes and back every enumeration in the package.
"""
from __future__ import annotations

import itertools
from functools import cached_property, lru_cache

import numpy as np

from .linalg import inv_mod_p, nullspace_mod_p, rank_mod_p

MAX_ORDER = 2**24
# log/antilog tables (and with them every vectorised routine) up to this order
MAX_TABLE_ORDER = 2**16
# full addition table for odd characteristic up to this order
MAX_ADD_TABLE_ORDER = 2**10


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# -- polynomials over F_p as coefficient lists, low degree first -----------

def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim(a)
    df = len(f) - 1
    lead_inv = pow(f[-1], p - 2, p)
    while len(a) - 1 >= df:
        c = a[-1] * lead_inv % p
        shift = len(a) - 1 - df
        for i, fi in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fi) % p
        a = _trim(a)
    return a


def _poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _poly_sub(a, b, p):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def _poly_powmod(base, e, f, p):
    result = [1]
    base = _poly_mod(base, f, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), f, p)
        base = _poly_mod(_poly_mul(base, base, p), f, p)
        e >>= 1
    return result


def is_irreducible(f, p: int) -> bool:
    """Ben-Or test: f has no factor of degree <= deg(f)/2."""
    f = _trim(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _poly_powmod(xp, p, f, p)
        if len(_poly_gcd(f, _poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def least_irreducible(p: int, m: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree m over F_p.

    Candidates are ordered by (c_0, c_1, ..., c_{m-1}) compared
    position by position, low degree first.
    """
    for low in itertools.product(range(p), repeat=m):
        if m > 1 and low[0] == 0:
            continue
        f = list(low) + [1]
        if is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")  # unreachable


class FieldCtx:
    """The field GF(p^m) = F_p[x]/(modulus). Immutable once built."""

    def __init__(self, p: int, m: int, modulus):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p**m
        self._powers = [p**k for k in range(m)]

    def __repr__(self):
        return f"FieldCtx(p={self.p}, m={self.m}, modulus={list(self.modulus)})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and (self.p, self.m, self.modulus) == (
            other.p, other.m, other.modulus)

    def __hash__(self):
        return hash((self.p, self.m, self.modulus))

    def __reduce__(self):
        return make_field, (self.p, self.m)

    # -- element handles ---------------------------------------------------

    def __call__(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            self._own(value)
            return value
        return FieldElement(self, int(value))

    @property
    def zero(self):
        return FieldElement(self, 0)

    @property
    def one(self):
        return FieldElement(self, 1)

    def elements(self):
        return [FieldElement(self, a) for a in range(self.order)]

    def _own(self, x: "FieldElement"):
        if x.field != self:
            raise ValueError(f"element of {x.field!r} used in {self!r}")

    def check_code(self, a: int) -> int:
        if not 0 <= a < self.order:
            raise ValueError(f"element code {a} outside [0, {self.order})")
        return a

    # -- codes <-> coefficient vectors -------------------------------------

    def coeffs(self, a: int) -> tuple[int, ...]:
        p = self.p
        out = []
        for _ in range(self.m):
            a, c = divmod(a, p)
            out.append(c)
        return tuple(out)

    def from_coeffs(self, cs) -> int:
        if len(cs) != self.m:
            raise ValueError("need exactly m coefficients")
        return sum((c % self.p) * pk for c, pk in zip(cs, self._powers))

    def digits(self, codes) -> np.ndarray:
        """Vectorised ``coeffs``: shape (..., m)."""
        codes = np.asarray(codes, dtype=np.int64)
        return (codes[..., None] // np.array(self._powers, dtype=np.int64)) % self.p

    def undigits(self, digits) -> np.ndarray:
        return (np.asarray(digits, dtype=np.int64) % self.p) @ np.array(
            self._powers, dtype=np.int64)

    # -- scalar arithmetic on codes ----------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        p, out, pk = self.p, 0, 1
        while a or b:
            a, ca = divmod(a, p)
            b, cb = divmod(b, p)
            out += ((ca + cb) % p) * pk
            pk *= p
        return out

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        return self.from_coeffs([-c for c in self.coeffs(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_poly(self, a: int, b: int) -> int:
        prod = _poly_mul(_trim(self.coeffs(a)), _trim(self.coeffs(b)), self.p)
        r = _poly_mod(prod, self.modulus, self.p)
        return self.from_coeffs(r + [0] * (self.m - len(r)))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.m == 1:
            return a * b % self.p
        if self.has_tables:
            exp, log = self._tables
            return int(exp[(log[a] + log[b]) % (self.order - 1)])
        return self._mul_poly(a, b)

    def pow(self, a: int, k: int) -> int:
        if k < 0:
            return self.pow(self.inv(a), -k)
        if a == 0:
            return 1 if k == 0 else 0
        if self.m == 1:
            return pow(a, k, self.p)
        k %= self.order - 1
        if self.has_tables:
            exp, log = self._tables
            return int(exp[log[a] * k % (self.order - 1)])
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        return self.pow(a, self.order - 2)

    # -- tables and vectorised arithmetic ----------------------------------

    @property
    def has_tables(self) -> bool:
        return self.order <= MAX_TABLE_ORDER

    def mul_matrix(self, a: int) -> np.ndarray:
        """m x m F_p matrix of y -> a*y acting on coefficient vectors."""
        cols = [self.coeffs(self._mul_poly(a, self.p**j)) for j in range(self.m)]
        return np.array(cols, dtype=np.int64).T

    @cached_property
    def primitive_element(self) -> int:
        if self.order == 2:
            return 1
        n = self.order - 1
        factors = prime_factors(n)
        for g in range(2, self.order):
            if all(self._pow_slow(g, n // f) != 1 for f in factors):
                return g
        raise AssertionError("no primitive element")  # unreachable

    def _pow_slow(self, a, k):
        result, base = 1, a
        while k:
            if k & 1:
                result = self._mul_poly(result, base)
            base = self._mul_poly(base, base)
            k >>= 1
        return result

    @cached_property
    def _tables(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.has_tables:
            raise ValueError(f"GF({self.p}^{self.m}) too large for lookup tables")
        n = self.order - 1
        g = self.primitive_element
        exp = np.array([1], dtype=np.int64)
        # doubling: exp[k:2k] = exp[0:k] * g^k, a linear map on digit vectors
        while exp.size < n:
            k = exp.size

            gk = self._pow_slow(g, k)
            nxt = self.undigits(self.digits(exp) @ self.mul_matrix(gk).T)
            exp = np.concatenate([exp, nxt])[:n]
        log = np.zeros(self.order, dtype=np.int64)
        log[exp] = np.arange(n)
        if np.unique(exp).size != n:
            raise AssertionError("antilog table is not a permutation")
        exp.setflags(write=False)
        log.setflags(write=False)
        return exp, log

    @cached_property
    def _add_table(self):
        if self.p == 2 or self.m == 1 or self.order > MAX_ADD_TABLE_ORDER:
            return None
        a = np.arange(self.order)
        t = self._vadd_digits(a[:, None], a[None, :])
        t.setflags(write=False)
        return t

    def _vadd_digits(self, a, b):
        return self.undigits(self.digits(a) + self.digits(b))

    def vadd(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        table = self._add_table
        if table is not None:
            return table[a, b]
        return self._vadd_digits(a, b)

    def vneg(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a.copy()
        if self.m == 1:
            return -a % self.p
        return self.undigits(-self.digits(a))

    def vmul(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.m == 1:
            return a * b % self.p
        exp, log = self._tables
        out = exp[(log[a] + log[b]) % (self.order - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def vpow(self, a, k: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if k < 0:
            return self.vpow(self.vinv(a), -k)
        if k == 0:
            return np.ones_like(a)
        if self.m == 1:
            out = np.array([pow(int(v), k, self.p) for v in range(self.p)])
            return out[a]
        exp, log = self._tables
        out = exp[log[a] * (k % (self.order - 1)) % (self.order - 1)]
        return np.where(a == 0, 0, out)

    def vinv(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.vpow(a, self.order - 2)

    # -- matrices over the field ------------------------------------------

    def rank(self, rows) -> int:
        """Rank over GF(p^m) of a matrix of element codes."""
        m = np.array(rows, dtype=np.int64)
        if m.ndim != 2 or m.size == 0:
            return 0
        nrows, ncols = m.shape
        rank = 0
        for col in range(ncols):
            if rank == nrows:
                break
            nz = np.nonzero(m[rank:, col])[0]
            if nz.size == 0:
                continue
            piv = rank + nz[0]
            if piv != rank:
                m[[rank, piv]] = m[[piv, rank]]
            m[rank] = self.vmul(m[rank], self.inv(int(m[rank, col])))
            for i in range(rank + 1, nrows):
                c = int(m[i, col])
                if c:
                    m[i] = self.vadd(m[i], self.vneg(self.vmul(m[rank], c)))
            rank += 1
        return rank


class FieldElement:
    """An element of a ``FieldCtx``; immutable, hashable, operator-overloaded."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldCtx, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", field.check_code(int(value)))

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self.field.coeffs(self.value)

    def _other(self, other) -> int:
        if not isinstance(other, FieldElement):
            return NotImplemented
        if other.field != self.field:
            raise ValueError("mixed field contexts")
        return other.value

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.add(self.value, b))

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.sub(self.value, b))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, b))

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FieldElement(self.field, self.field.mul(self.value, self.field.inv(b)))

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.field, self.field.pow(self.value, int(k)))

    def inv(self):
        return FieldElement(self.field, self.field.inv(self.value))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    __index__ = __int__

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.field == other.field and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.field.p, self.field.m, self.value))

    def __repr__(self):
        return f"GF({self.field.p}^{self.field.m})({self.value})"


@lru_cache(maxsize=None)
def make_field(p: int, m: int) -> FieldCtx:
    """Build GF(p^m) with the least irreducible modulus; cached per (p, m)."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"extension degree must be >= 1, got {m!r}")
    if p**m > MAX_ORDER:
        raise ValueError(f"{p}^{m} exceeds the supported size 2^24")
    return FieldCtx(p, m, least_irreducible(p, m))


def _subfield_exponent(ctx: FieldCtx, q: int) -> int:
    e, t = 0, q
    while t > 1 and t % ctx.p == 0:
        t //= ctx.p
        e += 1
    if t != 1 or e < 1:
        raise ValueError(f"{q} is not a power of the characteristic {ctx.p}")
    if ctx.m % e:
        raise ValueError(f"GF({q}) is not a subfield of GF({ctx.p}^{ctx.m})")
    return e


def frobenius(x: FieldElement, q: int, i: int = 1) -> FieldElement:
    """x^(q^i) for q a subfield order."""
    ctx = x.field
    _subfield_exponent(ctx, q)
    if i < 0:
        raise ValueError("Frobenius index must be >= 0")
    if x.value == 0:
        return x
    k = pow(q, i, ctx.order - 1) if ctx.order > 2 else 1
    return FieldElement(ctx, ctx.pow(x.value, k))


class SubfieldView:
    """The pair GF(q) inside GF(q^n), with q = p^e and e*n = m.

    Holds the q subfield elements, an F_q-basis of the big field and the
    data needed to write any element in that basis.
    """

    def __init__(self, ctx: FieldCtx, e: int):
        if e < 1 or ctx.m % e:
            raise ValueError(f"e={e} does not divide m={ctx.m}")
        self.ctx = ctx
        self.e = e
        self.n = ctx.m // e
        self.q = ctx.p**e
        p, m = ctx.p, ctx.m

        # kernel of x -> x^q - x over F_p
        frob = np.array(
            [ctx.coeffs(ctx.pow(p**j, self.q)) for j in range(m)], dtype=np.int64).T
        ker = nullspace_mod_p((frob - np.eye(m, dtype=np.int64)) % p, p)
        if ker.shape[0] != e:
            raise AssertionError("fixed field has the wrong dimension")
        self._fp_basis = tuple(int(v) for v in ctx.undigits(ker))
        elems = ctx.undigits(
            np.array(list(itertools.product(range(p), repeat=e)), dtype=np.int64) @ ker % p)
        self.subfield = tuple(sorted(int(v) for v in elems))

        basis, cols = [], []
        for cand in range(1, ctx.order):
            trial = cols + [ctx.coeffs(ctx.mul(cand, s)) for s in self._fp_basis]
            if rank_mod_p(np.array(trial).T, p) == len(trial):
                basis.append(cand)
                cols = trial
                if len(basis) == self.n:
                    break
        self.basis = tuple(basis)
        self._coord_inv = inv_mod_p(np.array(cols, dtype=np.int64).T, p)

    def __repr__(self):
        return f"SubfieldView(GF({self.q}) in GF({self.q}^{self.n}))"

    def __eq__(self, other):
        return isinstance(other, SubfieldView) and (self.ctx, self.e) == (other.ctx, other.e)

    def __hash__(self):
        return hash((self.ctx, self.e))

    def __reduce__(self):
        return make_subfield_view, (self.ctx, self.e)

    @property
    def order(self) -> int:
        """Size of the big field, q^n."""
        return self.ctx.order

    def minus_one_power(self, k: int) -> int:
        return 1 if k % 2 == 0 else self.ctx.neg(1)

    def coords(self, a: int) -> tuple[int, ...]:
        ctx = self.ctx
        d = self._coord_inv @ np.array(ctx.coeffs(a), dtype=np.int64) % ctx.p
        out = []
        for i in range(self.n):
            c = 0
            for k, s in enumerate(self._fp_basis):
                c = ctx.add(c, _scale(ctx, s, int(d[i * self.e + k])))
            out.append(c)
        return tuple(out)


def _scale(ctx: FieldCtx, a: int, k: int) -> int:
    """k*a for an integer k in [0, p)."""
    return ctx.from_coeffs([c * k for c in ctx.coeffs(a)])


@lru_cache(maxsize=None)
def make_subfield_view(ctx: FieldCtx, e: int) -> SubfieldView:
    return SubfieldView(ctx, e)


def norm(x: FieldElement, view: SubfieldView) -> FieldElement:
    """Relative norm GF(q^n) -> GF(q): x^((q^n - 1)/(q - 1))."""
    view.ctx._own(x)
    k = (view.order - 1) // (view.q - 1)
    return FieldElement(view.ctx, view.ctx.pow(x.value, k))


def coords_over_subfield(x: FieldElement, view: SubfieldView) -> tuple[FieldElement, ...]:
    view.ctx._own(x)
    return tuple(FieldElement(view.ctx, c) for c in view.coords(x.value))
