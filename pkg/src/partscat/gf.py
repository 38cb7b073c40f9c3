"""Finite field towers F_q <= F_{q^t} <= F_{q^n} with table-driven arithmetic.

An element of F_{p^d} is encoded as the integer ``sum(c[i] * p**i)`` of its
coordinates over the prime field (low degree first).  Every context carries
exp/log/Zech tables for its fixed generator, so multiplication, inversion,
Frobenius powers and addition are table lookups.  The tables double as the
discrete logarithm behind the canonical ``g^k`` text form.

Integer-level arithmetic lives on :class:`FieldCtx` (``ctx.mul(a, b)`` and so
on) and is what the rest of the package uses in its inner loops.
:class:`FElem` wraps an integer together with its context for the public,
operator-based API.
"""

import math
import re
from functools import lru_cache

import numpy as np

from .errors import (
    CtxMismatch,
    DivisionByZero,
    NoGeneratorFound,
    NonPrime,
    NoRootFound,
    NotDivisor,
    NotSubfield,
    ParseError,
    ReducibleModulus,
    WrongLength,
)

__all__ = [
    "FieldCtx",
    "FElem",
    "Embedding",
    "make_field",
    "tower_field",
    "add",
    "mul",
    "neg",
    "inv",
    "power",
    "frobenius",
    "rel_norm",
    "rel_trace",
    "in_subfield",
    "is_basis_over",
    "build_embedding",
    "primitive_element",
    "is_prime",
    "is_irreducible",
    "first_irreducible",
    "parse_field",
    "parse_element",
    "format_element",
]


# ---------------------------------------------------------------------------
# integer helpers


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def prime_factors(n):
    """Distinct prime factors of ``n`` by trial division."""
    out = []
    i = 2
    while i * i <= n:
        if n % i == 0:
            out.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        out.append(n)
    return out


def _int_log(q, p):
    """Return e with p**e == q, or None."""
    e = 0
    while q > 1 and q % p == 0:
        q //= p
        e += 1
    return e if q == 1 else None


# ---------------------------------------------------------------------------
# polynomials over Z_p as coefficient lists, low degree first


def _trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, m, p):
    a = _trim(a)
    m = _trim(m)
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm and a:
        c = a[-1] * inv_lead % p
        shift = len(a) - 1 - dm
        for i, mi in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mi) % p
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


def _poly_powmod(a, e, m, p):
    result = [1]
    base = _poly_mod(a, m, p)
    while e:
        if e & 1:
            result = _poly_mod(_poly_mul(result, base, p), m, p)
        base = _poly_mod(_poly_mul(base, base, p), m, p)
        e >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly, p):
    """Ben-Or test: gcd(X^(p^i) - X, f) = 1 for all i <= deg/2."""
    f = _trim(poly)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if f[0] == 0:
        return False
    x = [0, 1]
    xp = x
    for _ in range(d // 2):
        xp = _poly_powmod(xp, p, f, p)
        if len(_poly_gcd(f, _poly_sub(xp, x, p), p)) > 1:
            return False
    return True


def first_irreducible(p, d):
    """First monic irreducible of degree ``d`` in coefficient order.

    Candidates ``X^d + c_{d-1}X^{d-1} + ... + c_0`` are scanned by increasing
    integer encoding of ``(c_0, ..., c_{d-1})``, i.e. lexicographically from the
    highest free coefficient down.
    """
    for tail in range(p**d):
        coeffs = _decode(tail, p, d) + [1]
        if is_irreducible(coeffs, p):
            return tuple(coeffs)
    raise ReducibleModulus(f"no irreducible polynomial of degree {d} over Z_{p}")


def _decode(x, p, d):
    out = []
    for _ in range(d):
        out.append(x % p)
        x //= p
    return out


def _encode(coeffs, p):
    x = 0
    for c in reversed(coeffs):
        x = x * p + c
    return x


# ---------------------------------------------------------------------------
# tables


class _Tables:
    __slots__ = ("exp", "log", "zech", "exp_arr", "log_arr", "zech_arr", "generator")


def _raw_mul(a, b, p, d, modulus):
    """Multiply two encoded elements by schoolbook polynomial arithmetic."""
    prod = _poly_mul(_decode(a, p, d), _decode(b, p, d), p)
    return _encode(_poly_mod(prod, modulus, p) + [0] * d, p) if prod else 0


def _raw_pow(a, e, p, d, modulus):
    result, base = 1, a
    while e:
        if e & 1:
            result = _raw_mul(result, base, p, d, modulus)
        base = _raw_mul(base, base, p, d, modulus)
        e >>= 1
    return result


def _find_generator(p, d, modulus):
    order = p**d - 1
    if order == 1:
        return 1
    exps = [order // r for r in prime_factors(order)]
    for cand in range(1, p**d):
        if all(_raw_pow(cand, e, p, d, modulus) != 1 for e in exps):
            return cand
    raise NoGeneratorFound(f"no primitive element found for modulus {modulus}")


@lru_cache(maxsize=None)
def _build_tables(p, modulus):
    d = len(modulus) - 1
    Q = p**d
    N = Q - 1
    gen = _find_generator(p, d, list(modulus))
    exp = [0] * N
    cur = 1
    if d == 1:
        for k in range(N):
            exp[k] = cur
            cur = cur * gen % p
    elif p == 2 and gen == 2:
        mod_int = _encode(list(modulus), 2)
        for k in range(N):
            exp[k] = cur
            cur <<= 1
            if cur & Q:
                cur ^= mod_int
    elif gen == p:
        # multiplication by X: shift the digits and fold the top one back in
        low = [(-c) % p for c in modulus[:-1]]
        digits = [1] + [0] * (d - 1)
        for k in range(N):
            exp[k] = _encode(digits, p)
            top = digits[-1]
            digits = [0] + digits[:-1]
            if top:
                digits = [(x + top * c) % p for x, c in zip(digits, low)]
    else:
        for k in range(N):
            exp[k] = cur
            cur = _raw_mul(cur, gen, p, d, list(modulus))
    log = [-1] * Q
    for k, x in enumerate(exp):
        log[x] = k
    if any(v < 0 for v in log[1:]):
        raise NoGeneratorFound("generator is not primitive")
    zech = [0] * N
    for k, x in enumerate(exp):
        c0 = x % p
        y = x - c0 + (c0 + 1) % p
        zech[k] = log[y] if y else -1
    t = _Tables()
    t.exp, t.log, t.zech, t.generator = exp, log, zech, gen
    t.exp_arr = np.array(exp, dtype=np.int64)
    t.log_arr = np.array(log, dtype=np.int64)
    t.zech_arr = np.array(zech, dtype=np.int64)
    return t


# ---------------------------------------------------------------------------
# field context


class FieldCtx:
    """The field F_{p^d} with a fixed modulus and primitive generator.

    ``q``, ``n``, ``t`` and ``tprime`` describe the working tower
    F_q <= F_{q^t} <= F_{q^n}; without an explicit tower, ``q = p`` and
    ``n = d`` while ``t`` and ``tprime`` are ``None``.

    Contexts are immutable after construction.  Two contexts with the same
    prime and modulus share their tables and accept each other's elements.
    """

    def __init__(self, p, d, modulus, tower=None):
        self.p = p
        self.d = d
        self.modulus = tuple(modulus)
        self.order = p**d
        self.N = self.order - 1
        tables = _build_tables(p, self.modulus)
        self._exp = tables.exp
        self._log = tables.log
        self._zech = tables.zech
        self.exp_arr = tables.exp_arr
        self.log_arr = tables.log_arr
        self.zech_arr = tables.zech_arr
        self.generator = tables.generator
        self.key = (p, self.modulus)
        if tower is None:
            self.q, self.e, self.n, self.t, self.tprime = p, 1, d, None, None
        else:
            q, t, tprime = tower
            e = _int_log(q, p)
            if e is None or e < 1:
                raise NotSubfield(f"q={q} is not a power of p={p}")
            if e * t * tprime != d:
                raise NotDivisor(f"tower e*t*t' = {e}*{t}*{tprime} != d = {d}")
            self.q, self.e, self.n, self.t, self.tprime = q, e, t * tprime, t, tprime
        self._qpow = [pow(self.q, i, self.N) if self.N else 0 for i in range(self.n + 1)]
        self.add = self._add_xor if p == 2 else self._add_zech
        self._half = self.N // 2 if p != 2 else 0

    # -- construction helpers -------------------------------------------------

    def with_tower(self, q, t, tprime):
        return FieldCtx(self.p, self.d, self.modulus, (q, t, tprime))

    @property
    def tower(self):
        if self.t is None:
            return None
        return (self.q, self.t, self.tprime)

    def __repr__(self):
        tw = f", tower={self.tower}" if self.t is not None else ""
        return f"FieldCtx({self.p}^{self.d}, modulus={list(self.modulus)}{tw})"

    def __eq__(self, other):
        return isinstance(other, FieldCtx) and self.key == other.key and self.tower == other.tower

    def __hash__(self):
        return hash((self.key, self.tower))

    def __call__(self, value):
        """Wrap an integer encoding (or parse a text form) as an FElem."""
        if isinstance(value, str):
            return parse_element(self, value)
        if isinstance(value, FElem):
            self.check(value)
            return value
        if not 0 <= value < self.order:
            raise ValueError(f"encoding {value} out of range for {self!r}")
        return FElem(self, value)

    def check(self, x):
        if x.ctx.key != self.key:
            raise CtxMismatch(f"element of {x.ctx!r} used in {self!r}")

    def raw(self, x):
        """Integer encoding of ``x`` (an FElem of this field or an int)."""
        if isinstance(x, FElem):
            if x.ctx.key != self.key:
                raise CtxMismatch(f"element of {x.ctx!r} used in {self!r}")
            return x.value
        return x

    # -- arithmetic on encodings ---------------------------------------------

    def _add_xor(self, a, b):
        return a ^ b

    def _add_zech(self, a, b):
        if not a:
            return b
        if not b:
            return a
        la = self._log[a]
        z = self._zech[(self._log[b] - la) % self.N]
        if z < 0:
            return 0
        return self._exp[(la + z) % self.N]

    def neg(self, a):
        if not a or self.p == 2:
            return a
        return self._exp[(self._log[a] + self._half) % self.N]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if not a or not b:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % self.N]

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of zero")
        return self._exp[-self._log[a] % self.N]

    def div(self, a, b):
        if not b:
            raise DivisionByZero("division by zero")
        if not a:
            return 0
        return self._exp[(self._log[a] - self._log[b]) % self.N]

    def pow(self, a, k):
        if k == 0:
            return 1
        if not a:
            if k < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        return self._exp[(self._log[a] * k) % self.N]

    def frob(self, a, i):
        """a^(q^i) for the tower's q."""
        if not a:
            return 0
        return self._exp[(self._log[a] * self._qpow[i % self.n]) % self.N]

    def pfrob(self, a, h):
        """a^(p^h)."""
        if not a:
            return 0
        return self._exp[(self._log[a] * pow(self.p, h % self.d, self.N)) % self.N]

    def log(self, a):
        if not a:
            raise DivisionByZero("log of zero")
        return self._log[a]

    def exp(self, k):
        return self._exp[k % self.N]

    def from_int(self, c):
        """The prime-field element c mod p."""
        return c % self.p

    # -- subfields -------------------------------------------------------------

    def _check_div(self, m):
        if m < 1 or self.n % m:
            raise NotDivisor(f"{m} does not divide n = {self.n}")

    def subfield_step(self, m):
        """Exponent stride c with F_{q^m}^* = {g^(c*j)}."""
        self._check_div(m)
        return self.N // (self.q**m - 1)

    def in_subfield(self, a, m):
        self._check_div(m)
        if not a:
            return True
        return self._log[a] % self.subfield_step(m) == 0

    def subfield_nonzero(self, m):
        """F_{q^m}^* in generator-power order."""
        c = self.subfield_step(m)
        return [self._exp[c * j] for j in range(self.q**m - 1)]

    def subfield_elements(self, m):
        return [0] + self.subfield_nonzero(m)

    def nonzero(self):
        """F^* in generator-power order g^0, g^1, ..."""
        return list(self._exp)

    def norm(self, a, n, m):
        """N_{q^n/q^m}(a) for a in F_{q^n}."""
        if m < 1 or n % m or self.n % n:
            raise NotDivisor(f"need m | n | {self.n}, got m={m}, n={n}")
        if not self.in_subfield(a, n):
            raise NotSubfield("argument not in F_{q^%d}" % n)
        out = self.pow(a, (self.q**n - 1) // (self.q**m - 1))
        assert self.in_subfield(out, m)
        return out

    def trace(self, a, n, m):
        """Tr_{q^n/q^m}(a) for a in F_{q^n}."""
        if m < 1 or n % m or self.n % n:
            raise NotDivisor(f"need m | n | {self.n}, got m={m}, n={n}")
        if not self.in_subfield(a, n):
            raise NotSubfield("argument not in F_{q^%d}" % n)
        out = 0
        for i in range(n // m):
            out = self.add(out, self.frob(a, m * i))
        assert self.in_subfield(out, m)
        return out

    def poly_basis(self):
        """F_q-basis 1, g, ..., g^(n-1) of F_{q^n}."""
        return [self._exp[i % self.N] if self.N else 1 for i in range(self.n)]

    def prime_basis(self):
        """F_p-basis of the whole field: the unit coordinate vectors."""
        return [self.p**i for i in range(self.d)]

    # -- vectorised arithmetic (numpy arrays of encodings) ----------------------

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        la = self.log_arr[a]
        lb = self.log_arr[b]
        z = self.zech_arr[(lb - la) % self.N]
        out = np.where(z < 0, 0, self.exp_arr[(la + np.maximum(z, 0)) % self.N])
        out = np.where(a == 0, b, out)
        return np.where(b == 0, a, out)

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = self.exp_arr[(self.log_arr[a] + self.log_arr[b]) % self.N]
        return np.where((a == 0) | (b == 0), 0, out)

    # -- linear algebra over the field (lists of lists of encodings) -----------

    def rref(self, rows):
        """Reduced row echelon form; returns (matrix, pivot columns)."""
        M = [list(r) for r in rows]
        pivots = []
        r = 0
        ncols = len(M[0]) if M else 0
        for c in range(ncols):
            piv = next((i for i in range(r, len(M)) if M[i][c]), None)
            if piv is None:
                continue
            M[r], M[piv] = M[piv], M[r]
            inv = self.inv(M[r][c])
            M[r] = [self.mul(inv, x) for x in M[r]]
            for i in range(len(M)):
                if i != r and M[i][c]:
                    f = M[i][c]
                    M[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(M[i], M[r])]
            pivots.append(c)
            r += 1
            if r == len(M):
                break
        return M, pivots

    def det(self, rows):
        M = [list(r) for r in rows]
        k = len(M)
        det = 1
        for c in range(k):
            piv = next((i for i in range(c, k) if M[i][c]), None)
            if piv is None:
                return 0
            if piv != c:
                M[c], M[piv] = M[piv], M[c]
                det = self.neg(det)
            pc = M[c][c]
            det = self.mul(det, pc)
            inv = self.inv(pc)
            rowc = M[c]
            for i in range(c + 1, k):
                if M[i][c]:
                    f = self.mul(M[i][c], inv)
                    M[i] = [self.sub(x, self.mul(f, y)) for x, y in zip(M[i], rowc)]
        return det

    def matinv(self, rows):
        k = len(rows)
        aug = [list(r) + [1 if i == j else 0 for j in range(k)] for i, r in enumerate(rows)]
        R, pivots = self.rref(aug)
        if pivots[:k] != list(range(k)):
            raise DivisionByZero("singular matrix")
        return [row[k:] for row in R]

    def matmul(self, A, B):
        out = []
        for row in A:
            new = []
            for j in range(len(B[0])):
                acc = 0
                for i, x in enumerate(row):
                    if x and B[i][j]:
                        acc = self.add(acc, self.mul(x, B[i][j]))
                new.append(acc)
            out.append(new)
        return out

    def solve_affine(self, rows, rhs):
        """All solutions of rows * x = rhs as (particular, nullspace basis).

        Returns ``None`` when the system is inconsistent.
        """
        ncols = len(rows[0])
        aug = [list(r) + [b] for r, b in zip(rows, rhs)]
        R, pivots = self.rref(aug)
        if ncols in pivots:
            return None
        x = [0] * ncols
        for i, c in enumerate(pivots):
            x[c] = R[i][ncols]
        free = [c for c in range(ncols) if c not in pivots]
        null = []
        for fc in free:
            v = [0] * ncols
            v[fc] = 1
            for i, c in enumerate(pivots):
                v[c] = self.neg(R[i][fc])
            null.append(v)
        return x, null

    # -- F_p coordinates --------------------------------------------------------

    def coords(self, a):
        return _decode(a, self.p, self.d)

    def from_coords(self, coords):
        if len(coords) != self.d:
            raise WrongLength(f"expected {self.d} coordinates")
        return _encode([c % self.p for c in coords], self.p)


# ---------------------------------------------------------------------------
# elements


class FElem:
    """A field element bound to its context."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        self.ctx = ctx
        self.value = value

    @property
    def coords(self):
        return self.ctx.coords(self.value)

    def _other(self, other):
        if isinstance(other, FElem):
            if other.ctx.key != self.ctx.key:
                raise CtxMismatch(f"cannot combine {self.ctx!r} with {other.ctx!r}")
            return other.value
        if isinstance(other, int):
            return other % self.ctx.p
        return NotImplemented

    def __add__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FElem(self.ctx, self.ctx.add(self.value, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FElem(self.ctx, self.ctx.sub(self.value, b))

    def __rsub__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FElem(self.ctx, self.ctx.sub(b, self.value))

    def __mul__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FElem(self.ctx, self.ctx.mul(self.value, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._other(other)
        if b is NotImplemented:
            return b
        return FElem(self.ctx, self.ctx.div(self.value, b))

    def __neg__(self):
        return FElem(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k):
        return FElem(self.ctx, self.ctx.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, FElem):
            return self.ctx.key == other.ctx.key and self.value == other.value
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.key, self.value))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"FElem({format_element(self.ctx, self.value)})"

    def __str__(self):
        return format_element(self.ctx, self.value)

    def inv(self):
        return FElem(self.ctx, self.ctx.inv(self.value))

    def log(self):
        return self.ctx.log(self.value)


def _binary(x, y):
    if x.ctx.key != y.ctx.key:
        raise CtxMismatch(f"cannot combine {x.ctx!r} with {y.ctx!r}")
    return x.ctx


def add(x, y):
    ctx = _binary(x, y)
    return FElem(ctx, ctx.add(x.value, y.value))


def mul(x, y):
    ctx = _binary(x, y)
    return FElem(ctx, ctx.mul(x.value, y.value))


def neg(x):
    return FElem(x.ctx, x.ctx.neg(x.value))


def inv(x):
    return FElem(x.ctx, x.ctx.inv(x.value))


def power(x, k):
    return FElem(x.ctx, x.ctx.pow(x.value, k))


# ---------------------------------------------------------------------------
# constructors


def make_field(p, d, modulus=None, tower=None):
    """Build F_{p^d}.

    A supplied modulus must be monic of degree ``d`` (coefficients low degree
    first) and irreducible.  Otherwise the first irreducible polynomial in
    coefficient order is used (see :func:`first_irreducible`).
    """
    if not is_prime(p):
        raise NonPrime(f"{p} is not prime")
    if d < 1:
        raise ValueError("degree must be positive")
    if modulus is None:
        modulus = first_irreducible(p, d)
    else:
        modulus = tuple(int(c) % p for c in modulus)
        if len(modulus) != d + 1 or modulus[-1] != 1:
            raise ReducibleModulus(f"modulus {list(modulus)} is not monic of degree {d}")
        if not is_irreducible(modulus, p):
            raise ReducibleModulus(f"modulus {list(modulus)} is reducible over Z_{p}")
    return FieldCtx(p, d, modulus, tower)


def tower_field(q, t, tprime):
    """F_{q^n}, n = t * tprime, with the tower (q, t, tprime) declared."""
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e = _int_log(q, p)
    if e is None or not is_prime(p):
        raise NonPrime(f"{q} is not a prime power")
    return make_field(p, e * t * tprime, tower=(q, t, tprime))


def primitive_element(ctx):
    return FElem(ctx, ctx.generator)


# ---------------------------------------------------------------------------
# tower operations on FElem


def frobenius(x, i, q=None):
    """x^(q^i); ``q`` defaults to the tower's q and must be a subfield order."""
    ctx = x.ctx
    if q is None:
        q = ctx.q
    e = _int_log(q, ctx.p)
    if e is None or e == 0 or ctx.d % e:
        raise NotSubfield(f"F_{q} is not a subfield of F_{ctx.order}")
    if i < 0:
        raise ValueError("negative Frobenius power")
    i %= ctx.d // e
    return FElem(ctx, ctx.pfrob(x.value, e * i))


def rel_norm(x, n, m):
    return FElem(x.ctx, x.ctx.norm(x.value, n, m))


def rel_trace(x, n, m):
    return FElem(x.ctx, x.ctx.trace(x.value, n, m))


def in_subfield(x, m):
    return x.ctx.in_subfield(x.value, m)


def is_basis_over(elems, m):
    """Linear independence over F_{q^m} via the Moore-type determinant."""
    if not elems:
        raise WrongLength("empty element list")
    ctx = elems[0].ctx
    ctx._check_div(m)
    k = ctx.n // m
    if len(elems) != k:
        raise WrongLength(f"need {k} elements for a basis over F_(q^{m}), got {len(elems)}")
    vals = [ctx.raw(x) for x in elems]
    M = [[ctx.frob(v, m * j) for j in range(k)] for v in vals]
    return ctx.det(M) != 0


# ---------------------------------------------------------------------------
# embeddings between contexts


class Embedding:
    """Field embedding small -> big determined by the image of X."""

    def __init__(self, small, big, root):
        self.small = small
        self.big = big
        self.root = root
        powers = [1]
        for _ in range(small.d - 1):
            powers.append(big.mul(powers[-1], root))
        self._powers = powers
        img_g = self._linear(small.generator)
        self.generator_image = img_g
        if small.N:
            lg = big.log(img_g)
            self._table = [0] * small.order
            for k, x in enumerate(small.nonzero()):
                self._table[x] = big.exp(lg * k)
        else:
            self._table = [0, 1]

    def _linear(self, a):
        out = 0
        for c, pw in zip(self.small.coords(a), self._powers):
            if c:
                out = self.big.add(out, self.big.mul(c, pw))
        return out

    def __call__(self, x):
        if isinstance(x, FElem):
            self.small.check(x)
            return FElem(self.big, self._table[x.value])
        return self._table[x]


def _eval_modulus(ctx, coeffs, x):
    acc = 0
    for c in reversed(coeffs):
        acc = ctx.add(ctx.mul(acc, x), c % ctx.p)
    return acc


def build_embedding(small, big):
    if small.p != big.p or big.d % small.d:
        raise NotSubfield(f"{small!r} does not embed in {big!r}")
    if small.key == big.key:
        return Embedding(small, big, small.p if small.d > 1 else (-small.modulus[0]) % small.p)
    candidates = [0]
    if small.N:
        step = big.N // small.N
        candidates += [big.exp(step * j) for j in range(small.N)]
    for r in candidates:
        if _eval_modulus(big, small.modulus, r) == 0:
            emb = Embedding(small, big, r)
            if small.N:
                g = emb.generator_image
                if big.pow(g, small.N) != 1 or any(
                    big.pow(g, small.N // r_) == 1 for r_ in prime_factors(small.N)
                ):
                    raise NoRootFound("embedding does not preserve the generator order")
            return emb
    raise NoRootFound(f"modulus of {small!r} has no root in {big!r}")


# ---------------------------------------------------------------------------
# text forms

_FIELD_RE = re.compile(r"^\s*(\d+)\s*\^\s*(\d+)\s*(?:/\s*([\d,\s]+))?\s*$")


def parse_field(text, tower=None):
    """Parse ``p^d`` or ``p^d/c0,c1,...,1`` (modulus low degree first)."""
    m = _FIELD_RE.match(text)
    if not m:
        raise ParseError(f"bad field spec {text!r}")
    p, d = int(m.group(1)), int(m.group(2))
    modulus = None
    if m.group(3):
        modulus = [int(c) for c in m.group(3).split(",") if c.strip()]
    return make_field(p, d, modulus, tower)


def format_element(ctx, a):
    a = ctx.raw(a)
    if a == 0:
        return "0"
    return f"g^{ctx.log(a)}"


def format_vector(ctx, a):
    return "[" + ",".join(str(c) for c in ctx.coords(ctx.raw(a))) + "]"


_ELEM_RE = re.compile(r"^\s*(?:g\s*(?:\^\s*(-?\d+))?|(0))\s*$")


def parse_element(ctx, text):
    """Parse ``0``, ``g``, ``g^k`` or a coordinate vector ``[c0,c1,...]``."""
    text = text.strip()
    if text.startswith("["):
        if not text.endswith("]"):
            raise ParseError(f"bad element {text!r}")
        try:
            coords = [int(c) for c in text[1:-1].split(",") if c.strip()]
        except ValueError as exc:
            raise ParseError(f"bad element {text!r}") from exc
        if len(coords) != ctx.d:
            raise ParseError(f"expected {ctx.d} coordinates in {text!r}")
        return FElem(ctx, ctx.from_coords(coords))
    m = _ELEM_RE.match(text)
    if not m:
        raise ParseError(f"bad element {text!r}")
    if m.group(2):
        return FElem(ctx, 0)
    k = int(m.group(1)) if m.group(1) is not None else 1
    return FElem(ctx, ctx.exp(k) if ctx.N else 1)


def gcd_list(values):
    g = 0
    for v in values:
        g = math.gcd(g, v)
    return g
