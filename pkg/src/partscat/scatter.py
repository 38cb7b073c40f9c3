"""Scatteredness predicates for linearized polynomials.

For f over F_{q^n}, an index l and a divisor t of n, consider pairs y, z of
nonzero elements with f(y)/y^(q^l) = f(z)/z^(q^l).  Then f is

* scattered when every such pair has y/z in F_q,
* L-q^t-partially scattered when every such pair has y/z in F_{q^t},
* R-q^t-partially scattered when every such pair with y/z in F_{q^t} has
  y/z in F_q.

Three ways of deciding these are provided.  The *oracle* groups the nonzero
field elements into fibers of r(x) = f(x)/x^(q^l); writing x = g^k, a ratio
g^(i-j) lies in F_{q^m} iff i = j mod (q^n-1)/(q^m-1), so each property
reduces to counting distinct (fiber, k mod c) classes.  The *criterion*
(index 0 only) asks that f(rho x) - rho f(x) be bijective for rho in the
relevant set.  The *curve* form scans the zeros of
f(X)Y^(q^l) - f(Y)X^(q^l).
"""

import json
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import BudgetExceeded, HypothesisNotMet, NotDivisor
from .gf import build_embedding, format_element, make_field
from .linpoly import f_rho, is_invertible, kernel_elements

__all__ = [
    "ScatterReport",
    "PROPERTIES",
    "is_scattered_oracle",
    "is_L_partial_oracle",
    "is_R_partial_oracle",
    "oracle",
    "is_scattered_criterion",
    "is_L_partial_criterion",
    "is_R_partial_criterion",
    "criterion",
    "violates",
    "curve_numerator",
    "l_partial_via_curve",
    "exceptionality_probe",
    "check_L_inequality",
    "check_L_degree_bound",
    "normalized_shape",
]

PROPERTIES = ("scattered", "L-partial", "R-partial")
_ALIASES = {
    "scattered": "scattered",
    "s": "scattered",
    "l": "L-partial",
    "l-partial": "L-partial",
    "r": "R-partial",
    "r-partial": "R-partial",
}

# the naive pair scan is quadratic in the field size
NAIVE_LIMIT = 256


def canonical_property(prop):
    try:
        return _ALIASES[prop.lower()]
    except (KeyError, AttributeError):
        raise ValueError(f"unknown property {prop!r}; use scattered, L or R") from None


@dataclass(frozen=True)
class ScatterReport:
    property: str
    t: int
    ell: int
    holds: bool
    witness: tuple = None
    method: str = "oracle"
    ctx: object = None

    def __post_init__(self):
        if self.holds and self.witness is not None:
            raise ValueError("a report that holds carries no witness")
        if not self.holds and self.witness is None:
            raise ValueError("a failing report needs a witness")

    def record(self):
        wit = None
        if self.witness is not None:
            wit = [format_element(self.ctx, w) for w in self.witness]
        return {
            "property": self.property,
            "t": self.t,
            "ell": self.ell,
            "method": self.method,
            "holds": self.holds,
            "witness": wit,
        }

    def to_json(self):
        return json.dumps(self.record(), separators=(",", ":"))

    def __bool__(self):
        return self.holds


def _check_t(ctx, t):
    if t < 1 or ctx.n % t:
        raise NotDivisor(f"t = {t} does not divide n = {ctx.n}")


def _check_ell(ctx, ell):
    if not 0 <= ell < ctx.n:
        raise ValueError(f"index {ell} outside 0..{ctx.n - 1}")


def _ratio_keys(f, ell):
    """Per k: an integer identifying f(g^k)/g^(k q^ell), with -1 for zero."""
    ctx = f.ctx
    N = ctx.N
    vals = f.values()
    ks = np.arange(N, dtype=np.int64)
    logs = (ctx.log_arr[vals] - ks * ctx._qpow[ell]) % N
    return np.where(vals == 0, -1, logs)


def _conditions(ctx, prop, t):
    """(coarse, fine) strides: inside a coarse class, fine classes must not split."""
    c1 = ctx.subfield_step(1)
    ct = ctx.subfield_step(t)
    if prop == "scattered":
        return None, c1
    if prop == "L-partial":
        return None, ct
    return ct, c1


def violates(f, prop, t, ell, y, z):
    """True when the nonzero pair (y, z) breaks the defining condition."""
    ctx = f.ctx
    prop = canonical_property(prop)
    if not y or not z:
        raise ValueError("witness entries must be nonzero")
    ry = ctx.div(f.eval_raw(y), ctx.frob(y, ell))
    rz = ctx.div(f.eval_raw(z), ctx.frob(z, ell))
    if ry != rz:
        return False
    ratio = ctx.div(y, z)
    if prop == "scattered":
        return not ctx.in_subfield(ratio, 1)
    if prop == "L-partial":
        return not ctx.in_subfield(ratio, t)
    return ctx.in_subfield(ratio, t) and not ctx.in_subfield(ratio, 1)


def _fiber_scan(f, prop, t, ell):
    ctx = f.ctx
    N = ctx.N
    keys = _ratio_keys(f, ell)
    ks = np.arange(N, dtype=np.int64)
    coarse_c, fine_c = _conditions(ctx, prop, t)
    group = keys
    if coarse_c is not None:
        # keys are >= -1, so the shift keeps group codes distinct
        group = (keys + 1) * coarse_c + ks % coarse_c
    _, gid = np.unique(group, return_inverse=True)
    fine = ks % fine_c
    pairs = np.unique(gid * fine_c + fine)
    counts = np.bincount(pairs // fine_c, minlength=gid.max() + 1)
    bad = counts[gid] > 1
    if not bad.any():
        return None
    i = int(np.argmax(bad))
    partners = np.nonzero((gid == gid[i]) & (fine != fine[i]))[0]
    j = int(partners[0])
    return ctx.exp(i), ctx.exp(j)


def _naive_scan(f, prop, t, ell):
    ctx = f.ctx
    if ctx.order > NAIVE_LIMIT:
        raise BudgetExceeded(f"naive pair scan limited to fields of size {NAIVE_LIMIT}")
    elems = ctx.nonzero()
    for y in elems:
        for z in elems:
            if y != z and violates(f, prop, t, ell, y, z):
                return y, z
    return None


def oracle(f, prop, t=None, ell=0, naive=False):
    """Decide ``prop`` by the fiber scan (or the O(q^2n) pair loop if ``naive``)."""
    ctx = f.ctx
    prop = canonical_property(prop)
    if t is None:
        t = 1 if prop == "scattered" else ctx.n
    _check_t(ctx, t)
    _check_ell(ctx, ell)
    wit = (_naive_scan if naive else _fiber_scan)(f, prop, t, ell)
    return ScatterReport(prop, t, ell, wit is None, wit, "naive" if naive else "oracle", ctx)


def is_scattered_oracle(f, ell=0, naive=False):
    return oracle(f, "scattered", 1, ell, naive)


def is_L_partial_oracle(f, t, ell=0, naive=False):
    return oracle(f, "L-partial", t, ell, naive)


def is_R_partial_oracle(f, t, ell=0, naive=False):
    return oracle(f, "R-partial", t, ell, naive)


# ---------------------------------------------------------------------------
# bijectivity criterion (index 0)


def rho_range(ctx, prop, t):
    """The rho for which f_rho must be bijective, in generator-power order."""
    prop = canonical_property(prop)
    if prop == "R-partial":
        inner, outer = 1, t
    elif prop == "L-partial":
        inner, outer = t, ctx.n
    else:
        inner, outer = 1, ctx.n
    step_out = ctx.subfield_step(outer)
    step_in = ctx.subfield_step(inner)
    return [
        ctx.exp(k)
        for k in range(0, ctx.N, step_out)
        if k % step_in
    ]


def criterion(f, prop, t=None):
    ctx = f.ctx
    prop = canonical_property(prop)
    if t is None:
        t = 1 if prop == "scattered" else ctx.n
    _check_t(ctx, t)
    for rho in rho_range(ctx, prop, t):
        h = f_rho(f, rho)
        if not is_invertible(h):
            x = next(x for x in kernel_elements(h) if x)
            return ScatterReport(prop, t, 0, False, (ctx.mul(rho, x), x), "criterion", ctx)
    return ScatterReport(prop, t, 0, True, None, "criterion", ctx)


def is_scattered_criterion(f):
    return criterion(f, "scattered", 1)


def is_L_partial_criterion(f, t):
    return criterion(f, "L-partial", t)


def is_R_partial_criterion(f, t):
    return criterion(f, "R-partial", t)


# ---------------------------------------------------------------------------
# curve form

CURVE_LIMIT = 1 << 12


def curve_numerator(f, ell, x, y):
    """f(x) y^(q^ell) - f(y) x^(q^ell)."""
    ctx = f.ctx
    x, y = ctx.raw(x), ctx.raw(y)
    return ctx.sub(ctx.mul(f.eval_raw(x), ctx.frob(y, ell)), ctx.mul(f.eval_raw(y), ctx.frob(x, ell)))


def l_partial_via_curve(f, t, ell=0, limit=CURVE_LIMIT):
    """Scan the affine points (x, y), x, y != 0, y/x outside F_q, of the curve.

    The denominator X^q Y - X Y^q vanishes exactly when y/x is in F_q, so on
    the scanned pairs curve membership is the vanishing of the numerator.
    """
    ctx = f.ctx
    _check_t(ctx, t)
    _check_ell(ctx, ell)
    if ctx.order > limit:
        raise BudgetExceeded(f"curve scan limited to fields of size {limit}")
    N = ctx.N
    vals = f.values()
    ks = np.arange(N, dtype=np.int64)
    ys = ctx.exp_arr
    yq = ctx.exp_arr[(ks * ctx._qpow[ell]) % N]
    c1 = ctx.subfield_step(1)
    ct = ctx.subfield_step(t)
    for i in range(N):
        x = ctx.exp(i)
        num = ctx.vadd(ctx.vmul(vals[i], yq), ctx.vmul(ctx.neg(1), ctx.vmul(vals, ctx.frob(x, ell))))
        diff = (ks - i) % N
        hit = (num == 0) & (diff % c1 != 0) & (diff % ct != 0)
        if hit.any():
            j = int(np.argmax(hit))
            return ScatterReport("L-partial", t, ell, False, (x, int(ys[j])), "curve", ctx)
    return ScatterReport("L-partial", t, ell, True, None, "curve", ctx)


# ---------------------------------------------------------------------------
# exceptionality probes

PROBE_LIMIT = 1 << 16


def exceptionality_probe(f, t, prop, m_list, limit=PROBE_LIMIT, method="criterion"):
    """Evaluate ``prop`` for f viewed over F_{q^(nm)} for each m in ``m_list``.

    Returns ``[(m, holds), ...]``.  A False entry shows the property fails
    over that extension; all-True is evidence, never a proof of exceptionality.
    """
    ctx = f.ctx
    prop = canonical_property(prop)
    _check_t(ctx, t)
    for m in m_list:
        if m < 1:
            raise ValueError("extension degrees must be positive")
        if ctx.q ** (ctx.n * m) > limit:
            raise BudgetExceeded(f"F_(q^{ctx.n * m}) exceeds the probe budget {limit}")
    out = []
    for m in m_list:
        big = make_field(ctx.p, ctx.d * m, tower=(ctx.q, t, ctx.n * m // t))
        emb = build_embedding(ctx, big)
        g = f.embed(emb, big)
        if method == "criterion":
            rep = criterion(g, prop, t)
        else:
            rep = oracle(g, prop, t, 0)
        out.append((m, rep.holds))
    return out


# ---------------------------------------------------------------------------
# necessary conditions for L-partial scatteredness


def _le_sqrt(x, a, n):
    """Exactly decide x <= a * sqrt(n) for integers x, a and n >= 0."""
    if a >= 0:
        return x <= 0 or x * x <= a * a * n
    return x <= 0 and x * x >= a * a * n


SHAPES = ("a0+a1+high", "a0+high")


def normalized_shape(f, ell):
    """Shape flag of an ell-normalized f as used by the inequality check.

    ``"a0+a1+high"``: support is {0, 1} plus exponents above ell;
    ``"a0+high"``: support is {0} plus exponents above ell; otherwise None.
    """
    s = set(f.support)
    low = {i for i in s if i <= ell}
    if low == {0, 1} and 1 < ell:
        return "a0+a1+high"
    if low == {0}:
        return "a0+high"
    return None


def inequality_applies(k, ell, shape=None):
    if ell == 0:
        return True
    if ell == 1:
        return k >= 3
    if k % ell == 0:
        deg_ok = k >= 3 * ell
    else:
        deg_ok = k >= 2 * ell - 1
    if not deg_ok:
        return False
    if shape == "a0+a1+high":
        return k >= ell + 2
    return shape == "a0+high"


def check_L_inequality(q, n, k, t, ell, v=0, shape=None):
    """The Hasse-Weil type necessary condition for L-q^t-partial scatteredness.

    Returns True when the inequality holds (as it must for a non-monomial
    ell-normalized L-partial polynomial of q-degree k and minimal exponent v).
    Raises HypothesisNotMet outside the cases where the bound is known.
    """
    if shape is not None and shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    if not inequality_applies(k, ell, shape):
        raise HypothesisNotMet(f"no inequality for k={k}, ell={ell}, shape={shape}")
    N = q**n
    if ell == 0:
        a = (q**k - q - 1) * (q**k - q - 2)
        rest = q**t * (q**k - q) + 2 * (q ** (k - v) - 1)
    else:
        a = (q**k + q**ell - q - 2) * (q**k + q**ell - q - 3)
        rest = q**t * (q**k + q**ell - q - 1)
    return _le_sqrt(N - rest, a, N)


def check_L_degree_bound(n, k, t, ell):
    """n/2 <= max{2k, 2ell, (k+t)/2, (ell+t)/2}, compared exactly."""
    bound = max(Fraction(2 * k), Fraction(2 * ell), Fraction(k + t, 2), Fraction(ell + t, 2))
    return Fraction(n, 2) <= bound
