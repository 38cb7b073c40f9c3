"""F_q-linearized polynomials over F_{q^n}.

A :class:`LinPoly` stores the dense coefficient vector ``(a_0, ..., a_{n-1})``
of ``sum a_i x^(q^i)`` as integer encodings in its field context.  Exponents
live in Z/nZ because x^(q^n) = x on F_{q^n}.
"""

import math
import re

import numpy as np

from . import fplin
from .errors import BaseMismatch, NotDivisor, NotInvertible, ParseError, ZeroPolynomial, ZeroRho
from .gf import FElem, format_element, gcd_list, parse_element

__all__ = [
    "LinPoly",
    "evaluate",
    "compose",
    "adjoint",
    "f_rho",
    "dickson_matrix",
    "is_invertible",
    "kernel_dim",
    "kernel_basis",
    "normalize",
    "inverse",
    "parse_poly",
    "format_poly",
]


class LinPoly:
    """``sum a_i x^(q^i)`` over the field ``ctx`` (q and n taken from its tower).

    ``base_exp = m`` declares the polynomial F_{q^m}-linearized; construction
    fails with :class:`BaseMismatch` if a coefficient sits off the multiples
    of m.
    """

    __slots__ = ("ctx", "coeffs", "base_exp", "_values")

    def __init__(self, ctx, coeffs, base_exp=1):
        n = ctx.n
        vals = [ctx.raw(c) for c in coeffs]
        if len(vals) > n:
            raise ValueError(f"{len(vals)} coefficients for n = {n}")
        vals += [0] * (n - len(vals))
        if base_exp < 1 or n % base_exp:
            raise NotDivisor(f"base exponent {base_exp} does not divide n = {n}")
        if base_exp > 1 and any(c for i, c in enumerate(vals) if i % base_exp):
            raise BaseMismatch(f"coefficients off multiples of {base_exp}")
        self.ctx = ctx
        self.coeffs = tuple(vals)
        self.base_exp = base_exp
        self._values = None

    @classmethod
    def from_terms(cls, ctx, terms, base_exp=1):
        """Build from ``{exponent: coefficient}``; exponents are reduced mod n."""
        coeffs = [0] * ctx.n
        for i, c in terms.items():
            i %= ctx.n
            coeffs[i] = ctx.add(coeffs[i], ctx.raw(c))
        return cls(ctx, coeffs, base_exp)

    @classmethod
    def monomial(cls, ctx, i, c=1):
        return cls.from_terms(ctx, {i: c})

    @classmethod
    def identity(cls, ctx):
        return cls.monomial(ctx, 0)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, [])

    # -- structure -------------------------------------------------------------

    @property
    def n(self):
        return self.ctx.n

    @property
    def support(self):
        return [i for i, c in enumerate(self.coeffs) if c]

    @property
    def q_degree(self):
        s = self.support
        return s[-1] if s else -1

    @property
    def min_exponent(self):
        s = self.support
        return s[0] if s else -1

    def is_zero(self):
        return not any(self.coeffs)

    def is_monomial(self):
        return len(self.support) == 1

    def natural_base(self):
        """Largest m | n such that every exponent in the support is a multiple of m."""
        return math.gcd(self.n, gcd_list(self.support))

    def __eq__(self, other):
        return (
            isinstance(other, LinPoly)
            and self.ctx.key == other.ctx.key
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.key, self.coeffs))

    def __repr__(self):
        return f"LinPoly({format_poly(self) or '0'})"

    def __str__(self):
        return format_poly(self) or "0"

    def __add__(self, other):
        _same(self, other)
        ctx = self.ctx
        return LinPoly(ctx, [ctx.add(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        _same(self, other)
        ctx = self.ctx
        return LinPoly(ctx, [ctx.sub(a, b) for a, b in zip(self.coeffs, other.coeffs)])

    def scale(self, c):
        ctx = self.ctx
        c = ctx.raw(c)
        return LinPoly(ctx, [ctx.mul(c, a) for a in self.coeffs], self.base_exp)

    # -- evaluation --------------------------------------------------------------

    def __call__(self, x):
        if isinstance(x, FElem):
            return FElem(self.ctx, self.eval_raw(self.ctx.raw(x)))
        return self.eval_raw(x)

    def eval_raw(self, x):
        if not x:
            return 0
        ctx = self.ctx
        N = ctx.N
        lx = ctx._log[x]
        exp, log, qpow = ctx._exp, ctx._log, ctx._qpow
        acc = 0
        add = ctx.add
        for i, a in enumerate(self.coeffs):
            if a:
                acc = add(acc, exp[(log[a] + lx * qpow[i]) % N])
        return acc

    def values(self):
        """numpy array of f(g^k) for k = 0 .. N-1 (generator-power order)."""
        if self._values is None:
            ctx = self.ctx
            N = ctx.N
            ks = np.arange(N, dtype=np.int64)
            acc = np.zeros(N, dtype=np.int64)
            for i, a in enumerate(self.coeffs):
                if a:
                    term = ctx.exp_arr[(ctx._log[a] + ks * ctx._qpow[i]) % N]
                    acc = ctx.vadd(acc, term)
            acc.setflags(write=False)
            self._values = acc
        return self._values

    def embed(self, emb, big):
        """The same polynomial with coefficients pushed through a field embedding."""
        if big.n < self.n:
            raise ValueError("target field is smaller")
        return LinPoly(big, [emb(a) for a in self.coeffs])


def _same(f, h):
    from .errors import CtxMismatch

    if f.ctx.key != h.ctx.key or f.ctx.q != h.ctx.q:
        raise CtxMismatch("polynomials over different fields")


# ---------------------------------------------------------------------------


def evaluate(f, x):
    return f(x)


def compose(f, h):
    """f o h, folded modulo x^(q^n) - x."""
    _same(f, h)
    ctx = f.ctx
    n = ctx.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        if not a:
            continue
        for j, b in enumerate(h.coeffs):
            if b:
                k = (i + j) % n
                out[k] = ctx.add(out[k], ctx.mul(a, ctx.frob(b, i)))
    return LinPoly(ctx, out, math.gcd(f.base_exp, h.base_exp))


def adjoint(f):
    """Adjoint with respect to the trace form Tr_{q^n/q}(xy)."""
    ctx = f.ctx
    n = ctx.n
    out = [0] * n
    for i, a in enumerate(f.coeffs):
        if a:
            out[(n - i) % n] = ctx.frob(a, n - i)
    return LinPoly(ctx, out, f.base_exp)


def f_rho(f, rho):
    """The polynomial of x -> f(rho x) - rho f(x)."""
    ctx = f.ctx
    rho = ctx.raw(rho)
    if not rho:
        raise ZeroRho("rho must be nonzero")
    out = [ctx.mul(a, ctx.sub(ctx.frob(rho, i), rho)) if a else 0 for i, a in enumerate(f.coeffs)]
    return LinPoly(ctx, out)


def dickson_matrix(f, m=None):
    """k x k matrix D[i][j] = a_{m((j-i) mod k)}^(q^(m i)), k = n/m."""
    ctx = f.ctx
    if m is None:
        m = f.base_exp
    if m < 1 or ctx.n % m:
        raise NotDivisor(f"{m} does not divide n = {ctx.n}")
    if any(c for i, c in enumerate(f.coeffs) if i % m):
        raise BaseMismatch(f"polynomial is not F_(q^{m})-linearized")
    k = ctx.n // m
    a = [f.coeffs[m * j] for j in range(k)]
    return [[ctx.frob(a[(j - i) % k], m * i) for j in range(k)] for i in range(k)]


def _reduced_dickson(f):
    # x -> x^(q^v) is bijective, so f is invertible iff its shift by the
    # minimal exponent is; the shift may be linear over a larger subfield.
    v = f.min_exponent
    shifted = LinPoly(f.ctx, f.coeffs[v:] + f.coeffs[:v])
    m = shifted.natural_base()
    return dickson_matrix(shifted, m)


def is_invertible(f):
    """Bijectivity on F_{q^n}, decided by a Dickson determinant."""
    if f.is_zero():
        return False
    D = _reduced_dickson(f)
    return f.ctx.det(D) != 0


def _fp_images(f):
    ctx = f.ctx
    return [f.eval_raw(b) for b in ctx.prime_basis()]


def kernel_basis(f):
    """F_p-basis of ker f as integer encodings."""
    ctx = f.ctx
    return fplin.kernel(_fp_images(f), ctx.p, ctx.d, ctx.d)


def kernel_dim(f, exhaustive_limit=1 << 20):
    """dim over F_q of ker f.

    Computed from the F_p-rank of the map and cross-checked by counting the
    zeros of f over the whole field when it has at most ``exhaustive_limit``
    elements.
    """
    ctx = f.ctx
    dim_p = ctx.d - fplin.rank(_fp_images(f), ctx.p, ctx.d)
    if ctx.order <= exhaustive_limit:
        size = 1 + int(np.count_nonzero(f.values() == 0))
        if size != ctx.p**dim_p:
            raise ArithmeticError(f"kernel size {size} disagrees with rank (p-dim {dim_p})")
    return dim_p // ctx.e


def kernel_elements(f):
    """All kernel elements in generator-power order (0 first)."""
    ctx = f.ctx
    elems = fplin.combinations(kernel_basis(f), ctx.p, lambda x, c, b: ctx.add(x, ctx.mul(c, b)))
    return sorted(elems, key=lambda x: -1 if x == 0 else ctx.log(x))


def inverse(f):
    """Compositional inverse, read off the inverse Dickson matrix."""
    ctx = f.ctx
    if not is_invertible(f):
        raise NotInvertible("polynomial is not invertible")
    D = dickson_matrix(LinPoly(ctx, f.coeffs), 1)
    return LinPoly(ctx, ctx.matinv(D)[0])


def normalize(f, ell):
    """Return ``(g, ell')`` with g the ell-normalized form of f.

    Steps: drop the x^(q^ell) term, make monic, and for ell > 0 shift away a
    nonzero minimal exponent v (Frobenius-twisting the coefficients by q^(n-v)),
    which moves the index to ell - v mod n.
    """
    ctx = f.ctx
    n = ctx.n
    if f.is_zero():
        raise ZeroPolynomial("cannot normalize the zero polynomial")
    if not 0 <= ell < n:
        raise ValueError(f"index {ell} outside 0..{n - 1}")
    coeffs = list(f.coeffs)
    coeffs[ell] = 0
    g = LinPoly(ctx, coeffs)
    if g.is_zero():
        raise ZeroPolynomial("polynomial is a monomial at the index itself")
    # scaling after the removal keeps g monic when the top term sat at ell
    g = g.scale(ctx.inv(g.coeffs[g.q_degree]))
    v = g.min_exponent
    if ell > 0 and v > 0:
        shifted = [0] * n
        for i, a in enumerate(g.coeffs):
            if a:
                shifted[i - v] = ctx.frob(a, n - v)
        g = LinPoly(ctx, shifted)
        ell = (ell - v) % n
    return g, ell


# ---------------------------------------------------------------------------
# text form: "i:elem,j:elem"

_TERM_RE = re.compile(r"^\s*(\d+)\s*:\s*(.+?)\s*$")


def parse_poly(ctx, text, sep=","):
    text = text.strip()
    if text in ("", "0"):
        return LinPoly.zero(ctx)
    terms = {}
    for part in text.split(sep):
        m = _TERM_RE.match(part)
        if not m:
            raise ParseError(f"bad polynomial term {part!r}")
        i = int(m.group(1))
        if i >= ctx.n:
            raise ParseError(f"exponent {i} >= n = {ctx.n}")
        terms[i] = ctx.add(terms.get(i, 0), parse_element(ctx, m.group(2)).value)
    return LinPoly.from_terms(ctx, terms)


def format_poly(f, sep=","):
    return sep.join(f"{i}:{format_element(f.ctx, a)}" for i, a in enumerate(f.coeffs) if a)
