"""Explicit families of partially scattered polynomials and their tests.

Covers monomials x^(q^u), LP polynomials x^(q^(s(n-1))) + delta x^(q^s), the
family sum a_i x^(q^(it+s)) (called form11 below) built as g_a o x^(q^s),
binomials, trinomials and quadrinomials.  Constructors take the field context
first; field elements may be passed as integer encodings or FElems.
"""

import itertools
import math
import re
from dataclasses import dataclass, field

from .errors import (
    BudgetExceeded,
    EvenN,
    ExponentRange,
    GcdViolation,
    NotBasis,
    NotDivisor,
    NotPrimitive,
    ParseError,
    PhiNotRPartial,
    WrongTower,
    ZeroVector,
)
from .gf import FElem, is_basis_over, parse_element
from .linpoly import LinPoly, compose, is_invertible, kernel_dim, parse_poly
from .scatter import oracle

__all__ = [
    "monomial",
    "monomial_status",
    "lp_poly",
    "lp_status_odd_n",
    "lp_is_scattered",
    "family11",
    "g_a",
    "family11_is_R_partial",
    "compose_construct",
    "binomial",
    "binomial_is_R_partial",
    "trinomial",
    "trinomial_is_R_partial",
    "invertible_from_basis",
    "count_R_partial_form11",
    "form11_formula",
    "enumerate_form11",
    "binomial_R_not_scattered",
    "quadrinomial",
    "lz2_quadrinomial",
    "FamilySpec",
    "parse_family",
]


def _raw(ctx, x):
    return ctx.raw(x)


def _need_t(ctx, t):
    if t < 1 or ctx.n % t:
        raise NotDivisor(f"t = {t} does not divide n = {ctx.n}")
    return ctx.n // t


# ---------------------------------------------------------------------------
# monomials


def monomial(ctx, u, c=1):
    return LinPoly.monomial(ctx, u % ctx.n, c)


@dataclass(frozen=True)
class MonomialStatus:
    L: bool
    R: bool
    scattered: bool
    exceptional_L_not_scattered: bool
    exceptional_R_not_scattered: bool


def monomial_status(u, n, t):
    """L, R and scattered status of x^(q^u) over F_{q^n}; independent of q."""
    if u < 1:
        raise ValueError("u must be positive")
    if t < 1 or n % t:
        raise NotDivisor(f"t = {t} does not divide n = {n}")
    gn, gt = math.gcd(u, n), math.gcd(u, t)
    L = t % gn == 0
    R = gt == 1
    return MonomialStatus(
        L=L,
        R=R,
        scattered=gn == 1,
        exceptional_L_not_scattered=gn != 1 and L,
        exceptional_R_not_scattered=gt == 1 and gt < gn,
    )


# ---------------------------------------------------------------------------
# LP polynomials


def lp_poly(ctx, delta, s=1):
    n = ctx.n
    if math.gcd(s, n) != 1:
        raise GcdViolation(f"gcd(s, n) = gcd({s}, {n}) != 1")
    return LinPoly.from_terms(ctx, {(s * (n - 1)) % n: 1, s % n: _raw(ctx, delta)})


def lp_status_odd_n(ctx, delta, s, t):
    """(L, R) of the LP polynomial for odd n when the norm of delta is 1.

    Returns ``(False, False)`` when N_{q^n/q}(delta) = 1, otherwise
    ``(None, None)`` meaning the statement gives no verdict.
    """
    n = ctx.n
    if n % 2 == 0:
        raise EvenN("statement requires n odd")
    if t < 1 or n % t:
        raise NotDivisor(f"t = {t} does not divide n = {n}")
    if math.gcd(s, n) != 1:
        raise GcdViolation(f"gcd(s, n) = gcd({s}, {n}) != 1")
    if ctx.norm(_raw(ctx, delta), n, 1) == 1:
        return False, False
    return None, None


def lp_is_scattered(ctx, delta, s=1):
    """Scatteredness of the LP polynomial: N_{q^n/q}(delta) != 1."""
    return ctx.norm(_raw(ctx, delta), ctx.n, 1) != 1


# ---------------------------------------------------------------------------
# the family sum a_i x^(q^(it+s))


def _check_form11(ctx, a, s, t):
    tp = _need_t(ctx, t)
    if math.gcd(s, t) != 1:
        raise GcdViolation(f"gcd(s, t) = gcd({s}, {t}) != 1")
    if len(a) != tp:
        raise ValueError(f"need {tp} coefficients, got {len(a)}")
    vals = [_raw(ctx, c) for c in a]
    if not any(vals):
        raise ZeroVector("coefficient vector is zero")
    return vals


def family11(ctx, a, s, t):
    vals = _check_form11(ctx, a, s, t)
    return LinPoly.from_terms(ctx, {i * t + s: c for i, c in enumerate(vals) if c})


def g_a(ctx, a, t):
    """sum a_i x^(q^(it)), an F_{q^t}-linearized polynomial."""
    _need_t(ctx, t)
    terms = {i * t: _raw(ctx, c) for i, c in enumerate(a) if _raw(ctx, c)}
    return LinPoly.from_terms(ctx, terms, base_exp=t)


def family11_is_R_partial(ctx, a, s, t):
    _check_form11(ctx, a, s, t)
    return is_invertible(g_a(ctx, a, t))


def compose_construct(ctx, a, t, phi, verify=False):
    """(g_a o phi, g_a invertible); phi must be R-q^t-partially scattered."""
    if verify and not oracle(phi, "R-partial", t).holds:
        raise PhiNotRPartial("phi is not R-q^t-partially scattered")
    g = g_a(ctx, a, t)
    return compose(g, phi), is_invertible(g)


# ---------------------------------------------------------------------------
# binomials and trinomials


def _check_binomial(ctx, k, s, t):
    _need_t(ctx, t)
    if math.gcd(s, t) != 1:
        raise GcdViolation(f"gcd(s, t) = gcd({s}, {t}) != 1")
    if k <= 0 or s <= 0 or k * t + s >= ctx.n:
        raise ExponentRange(f"need k, s > 0 and kt + s < n, got k={k}, s={s}, t={t}")


def binomial(ctx, alpha, k, s, t):
    """x^(q^(kt+s)) + alpha x^(q^s)."""
    _check_binomial(ctx, k, s, t)
    return LinPoly.from_terms(ctx, {k * t + s: 1, s: _raw(ctx, alpha)})


def binomial_norm_degree(ctx, k, t):
    return t * math.gcd(k, ctx.n // t)


def binomial_is_R_partial(ctx, alpha, k, s, t):
    """(holds, exceptional_evidence) from N_{q^n/q^(t gcd(k,t'))}(-alpha) != 1."""
    _check_binomial(ctx, k, s, t)
    m = binomial_norm_degree(ctx, k, t)
    holds = ctx.norm(ctx.neg(_raw(ctx, alpha)), ctx.n, m) != 1
    return holds, holds


def trinomial(ctx, alpha, beta, s, t):
    """x^(q^(2t+s)) + beta x^(q^(t+s)) + alpha x^(q^s) over F_{q^(3t)}."""
    if ctx.n != 3 * t:
        raise WrongTower(f"trinomial needs n = 3t, got n={ctx.n}, t={t}")
    if math.gcd(s, t) != 1:
        raise GcdViolation(f"gcd(s, t) = gcd({s}, {t}) != 1")
    return LinPoly.from_terms(ctx, {2 * t + s: 1, t + s: _raw(ctx, beta), s: _raw(ctx, alpha)})


def trinomial_expression(ctx, alpha, beta, t):
    """N(alpha) + N(beta) - Tr(alpha beta^(q^t)) + 1 for F_{q^(3t)}/F_{q^t}."""
    if ctx.n != 3 * t:
        raise WrongTower(f"trinomial needs n = 3t, got n={ctx.n}, t={t}")
    a, b = _raw(ctx, alpha), _raw(ctx, beta)
    n = ctx.n
    val = ctx.add(ctx.norm(a, n, t), ctx.norm(b, n, t))
    val = ctx.sub(val, ctx.trace(ctx.mul(a, ctx.frob(b, t)), n, t))
    return ctx.add(val, 1)


def trinomial_is_R_partial(ctx, alpha, beta, s, t):
    if math.gcd(s, t) != 1:
        raise GcdViolation(f"gcd(s, t) = gcd({s}, {t}) != 1")
    return trinomial_expression(ctx, alpha, beta, t) != 0


# ---------------------------------------------------------------------------
# invertible coefficient vectors and counting


def invertible_from_basis(ctx, alpha, basis, t):
    """a_i = sum_j alpha^(j q^(it)) basis_j for a primitive alpha and an F_{q^t}-basis."""
    tp = _need_t(ctx, t)
    al = _raw(ctx, alpha)
    if not al or math.gcd(ctx.log(al), ctx.N) != 1:
        raise NotPrimitive("alpha is not a primitive element")
    vals = [_raw(ctx, b) for b in basis]
    if len(vals) != tp or not is_basis_over([FElem(ctx, v) for v in vals], t):
        raise NotBasis(f"not a basis of F_(q^n) over F_(q^{t})")
    a = []
    for i in range(tp):
        ai = 0
        for j, bj in enumerate(vals):
            ai = ctx.add(ai, ctx.mul(ctx.frob(ctx.pow(al, j), i * t), bj))
        a.append(ai)
    assert is_invertible(g_a(ctx, a, t)), "constructed g_a is not invertible"
    return a


def form11_formula(q, t, tprime):
    n = t * tprime
    out = 1
    for i in range(tprime):
        out *= q**n - q ** (i * t)
    return out


ENUM_LIMIT = 1 << 20


def enumerate_form11(ctx, t, limit=ENUM_LIMIT):
    """Yield ``(a, invertible)`` for every coefficient vector a in F^(t')."""
    tp = _need_t(ctx, t)
    if ctx.order**tp > limit:
        raise BudgetExceeded(f"{ctx.order}^{tp} coefficient vectors exceed the budget {limit}")
    for a in itertools.product(range(ctx.order), repeat=tp):
        if not any(a):
            yield a, False
            continue
        yield a, is_invertible(g_a(ctx, a, t))


def count_R_partial_form11(q, t, tprime, limit=ENUM_LIMIT, ctx=None):
    """(formula, enumerated); enumerated is None when beyond the budget."""
    from .gf import tower_field

    formula = form11_formula(q, t, tprime)
    if q ** (t * tprime * tprime) > limit:
        return formula, None
    if ctx is None:
        ctx = tower_field(q, t, tprime)
    count = sum(1 for _, ok in enumerate_form11(ctx, t, limit) if ok)
    return formula, count


# ---------------------------------------------------------------------------
# R-partial binomials that are not scattered


@dataclass(frozen=True)
class NotScatteredVerdict:
    applies: bool
    R: bool
    scattered: bool
    witness_m: int = None


def binomial_R_not_scattered_bound(q, s):
    if (q == 3 and s > 1) or (q == 2 and s > 2):
        return 4 * s + 2
    return 4 * s + 1


def binomial_R_not_scattered(ctx, delta, s, t):
    """Check delta x^(q^s) + x^(q^(t+s)) over F_{q^(2t)} for R-partial, non-scattered.

    ``witness_m`` is the first m (encoding order, 0 included) with
    dim ker(f - m x) >= 2, which certifies non-scatteredness.
    """
    if ctx.n != 2 * t:
        raise WrongTower(f"needs n = 2t, got n={ctx.n}, t={t}")
    if math.gcd(s, t) != 1:
        raise GcdViolation(f"gcd(s, t) = gcd({s}, {t}) != 1")
    d = _raw(ctx, delta)
    f = LinPoly.from_terms(ctx, {s: d, t + s: 1})
    R = ctx.norm(d, ctx.n, t) != 1
    applies = ctx.n >= binomial_R_not_scattered_bound(ctx.q, s) and R
    witness = None
    for m in range(ctx.order):
        h = f - LinPoly.monomial(ctx, 0, m)
        if kernel_dim(h) >= 2:
            witness = m
            break
    return NotScatteredVerdict(applies, R, witness is None, witness)


# ---------------------------------------------------------------------------
# quadrinomials


def quadrinomial(ctx, s, k, t):
    """x^(q^s) + x^(q^(t+s)) + x^(q^k) - x^(q^(t+k)) over F_{q^(2t)}.

    The minus sign is +1 in characteristic 2.  s = k is allowed and gives
    2 x^(q^s) (or 0 in characteristic 2).
    """
    n = ctx.n
    if n != 2 * t:
        raise WrongTower(f"needs n = 2t, got n={n}, t={t}")
    if math.gcd(s, n) != 1 or math.gcd(k, n) != 1:
        raise GcdViolation("need gcd(s, 2t) = gcd(k, 2t) = 1")
    coeffs = [0] * n
    for e, c in ((s, 1), (t + s, 1), (k, 1), (t + k, ctx.neg(1))):
        coeffs[e % n] = ctx.add(coeffs[e % n], c)
    return LinPoly(ctx, coeffs)


def lz2_quadrinomial(ctx, k, t):
    """x^(q^(t-k)) + x^(q^(2t-k)) + x^(q^k) - x^(q^(t+k)) over F_{q^(2t)}."""
    n = ctx.n
    if n != 2 * t:
        raise WrongTower(f"needs n = 2t, got n={n}, t={t}")
    coeffs = [0] * n
    for e, c in ((t - k, 1), (2 * t - k, 1), (k, 1), (t + k, ctx.neg(1))):
        coeffs[e % n] = ctx.add(coeffs[e % n], c)
    return LinPoly(ctx, coeffs)


# ---------------------------------------------------------------------------
# text form "kind(param=value,...)"

KINDS = ("monomial", "LP", "form11", "binomial", "trinomial", "quadrinomial", "composed")
_INT_PARAMS = {"u", "s", "k", "t"}
_ELEM_PARAMS = {"delta", "alpha", "beta", "c"}
_SPEC_RE = re.compile(r"^\s*(\w+)\s*\((.*)\)\s*$")


@dataclass
class FamilySpec:
    kind: str
    params: dict = field(default_factory=dict)

    def build(self, ctx):
        p = self.params
        kind = self.kind
        if kind == "monomial":
            return monomial(ctx, p["u"], p.get("c", 1))
        if kind == "LP":
            return lp_poly(ctx, p["delta"], p.get("s", 1))
        if kind == "form11":
            return family11(ctx, p["a"], p["s"], p["t"])
        if kind == "binomial":
            return binomial(ctx, p["alpha"], p["k"], p["s"], p["t"])
        if kind == "trinomial":
            return trinomial(ctx, p["alpha"], p["beta"], p["s"], p["t"])
        if kind == "quadrinomial":
            return quadrinomial(ctx, p["s"], p["k"], p["t"])
        if kind == "composed":
            return compose_construct(ctx, p["a"], p["t"], p["phi"])[0]
        raise ParseError(f"unknown family kind {kind!r}")

    def characterization(self, ctx, t=None):
        """The family's own closed-form verdict, as ``{property: bool}``."""
        p = self.params
        kind = self.kind
        if kind == "monomial":
            st = monomial_status(p["u"], ctx.n, t or p.get("t", ctx.n))
            return {"L-partial": st.L, "R-partial": st.R, "scattered": st.scattered}
        if kind == "LP":
            return {"scattered": lp_is_scattered(ctx, p["delta"], p.get("s", 1))}
        if kind == "form11":
            return {"R-partial": family11_is_R_partial(ctx, p["a"], p["s"], p["t"])}
        if kind == "binomial":
            return {"R-partial": binomial_is_R_partial(ctx, p["alpha"], p["k"], p["s"], p["t"])[0]}
        if kind == "trinomial":
            return {"R-partial": trinomial_is_R_partial(ctx, p["alpha"], p["beta"], p["s"], p["t"])}
        if kind == "composed":
            return {"R-partial": compose_construct(ctx, p["a"], p["t"], p["phi"])[1]}
        return {}

    def text(self, ctx):
        from .gf import format_element
        from .linpoly import format_poly

        parts = []
        for key, val in self.params.items():
            if key == "a":
                val = "|".join(format_element(ctx, x) for x in val)
            elif key == "phi":
                val = format_poly(val, sep=";")
            elif key in _ELEM_PARAMS:
                val = format_element(ctx, val)
            parts.append(f"{key}={val}")
        return f"{self.kind}({','.join(parts)})"


def parse_family(ctx, text):
    """Parse e.g. ``binomial(k=1,s=1,t=2,alpha=g^3)``.

    Coefficient vectors use ``|`` (``a=g^3|g^0``) and the polynomial of a
    composed spec uses ``;`` between terms (``phi=1:g^0;3:g^2``).
    """
    m = _SPEC_RE.match(text)
    if not m:
        raise ParseError(f"bad family spec {text!r}")
    kind = m.group(1)
    match = {k.lower(): k for k in KINDS}
    if kind.lower() not in match:
        raise ParseError(f"unknown family kind {kind!r}")
    kind = match[kind.lower()]
    params = {}
    body = m.group(2).strip()
    for item in body.split(",") if body else []:
        if "=" not in item:
            raise ParseError(f"bad parameter {item!r}")
        key, val = (x.strip() for x in item.split("=", 1))
        if key in _INT_PARAMS:
            try:
                params[key] = int(val)
            except ValueError as exc:
                raise ParseError(f"parameter {key} must be an integer") from exc
        elif key in _ELEM_PARAMS:
            params[key] = parse_element(ctx, val).value
        elif key == "a":
            params[key] = [parse_element(ctx, x).value for x in val.split("|")]
        elif key == "phi":
            params[key] = parse_poly(ctx, val, sep=";")
        else:
            raise ParseError(f"unknown parameter {key!r}")
    return FamilySpec(kind, params)
