"""Linear sets in PG(2t'-1, q^t) coming from subspaces of F_{q^n} x F_{q^n}.

A pair (u, v) of field elements is stored as the integer ``u + v * p^d``,
which is its coordinate vector over the prime field, so F_p-linear algebra
on pairs is done with :mod:`partscat.fplin`.  F_{q^t}-scalars act on both
components at once; a projective point is the F_{q^t}^*-orbit of a nonzero
pair.
"""

import json
from dataclasses import dataclass, field

from . import fplin
from .errors import BudgetExceeded, NotBasis, NotDivisor, TowerMismatch

__all__ = [
    "SubspaceFq",
    "ProjPoint",
    "ProjLine",
    "graph_subspace",
    "is_scattered_subspace",
    "linear_set_points",
    "point_weights",
    "weight",
    "all_lines",
    "pseudoregulus_check",
    "PseudoregulusReport",
]


def _check_t(ctx, t):
    if t < 1 or ctx.n % t:
        raise NotDivisor(f"t = {t} does not divide n = {ctx.n}")


def _pack(ctx, u, v):
    return u + v * ctx.order


def _unpack(ctx, w):
    return w % ctx.order, w // ctx.order


def _scale(ctx, lam, w):
    u, v = _unpack(ctx, w)
    return _pack(ctx, ctx.mul(lam, u), ctx.mul(lam, v))


def subfield_fp_basis(ctx, m):
    """F_p-basis 1, b, b^2, ... of F_{q^m}, with b a generator of F_{q^m}^*."""
    b = ctx.exp(ctx.subfield_step(m)) if ctx.N else 1
    out, cur = [], 1
    for _ in range(ctx.e * m):
        out.append(cur)
        cur = ctx.mul(cur, b)
    return out


class SubspaceFq:
    """An F_q-subspace of F_{q^n} x F_{q^n} given by an F_q-basis of pairs."""

    def __init__(self, ctx, basis):
        self.ctx = ctx
        self.basis = [(ctx.raw(u), ctx.raw(v)) for u, v in basis]
        scal = subfield_fp_basis(ctx, 1)
        fp = [_pack(ctx, ctx.mul(c, u), ctx.mul(c, v)) for u, v in self.basis for c in scal]
        self._span = fplin.FpSpan(ctx.p, 2 * ctx.d, fp)
        if self._span.dim != ctx.e * len(self.basis):
            raise NotBasis("pairs are not linearly independent over F_q")
        self.fp_basis = fp

    @property
    def rank(self):
        return len(self.basis)

    def __contains__(self, pair):
        u, v = pair
        return _pack(self.ctx, self.ctx.raw(u), self.ctx.raw(v)) in self._span

    def contains_packed(self, w):
        return w in self._span

    def vectors(self):
        """All nonzero vectors, packed, in a fixed enumeration order."""
        ctx = self.ctx
        if ctx.p == 2:
            return [w for w in fplin.combinations(self.fp_basis, 2, lambda x, c, b: x ^ b if c else x) if w]
        vs = fplin.combinations(
            self.fp_basis, ctx.p, lambda x, c, b: _pack_add(ctx, x, _scale(ctx, c, b))
        )
        return [w for w in vs if w]

    def pairs(self):
        return [_unpack(self.ctx, w) for w in self.vectors()]


def _pack_add(ctx, w1, w2):
    u1, v1 = _unpack(ctx, w1)
    u2, v2 = _unpack(ctx, w2)
    return _pack(ctx, ctx.add(u1, u2), ctx.add(v1, v2))


def graph_subspace(f, ell=0):
    """U_f = {(x^(q^ell), f(x))} with basis built from 1, g, ..., g^(n-1)."""
    ctx = f.ctx
    return SubspaceFq(ctx, [(ctx.frob(b, ell), f.eval_raw(b)) for b in ctx.poly_basis()])


# ---------------------------------------------------------------------------
# projective points over F_{q^t}


@dataclass(frozen=True, order=True)
class ProjPoint:
    """A point <(u, v)> of PG(F_{q^n}^2 over F_{q^t}) in canonical form.

    Canonical form: the first nonzero component is scaled by F_{q^t}^* to the
    element of smallest discrete logarithm in its coset.
    """

    key: int
    t: int = field(compare=False)
    ctx: object = field(compare=False, repr=False)

    @classmethod
    def of(cls, ctx, t, u, v):
        return cls(canonical_key(ctx, t, _pack(ctx, ctx.raw(u), ctx.raw(v))), t, ctx)

    @property
    def rep(self):
        return _unpack(self.ctx, self.key)

    def text(self):
        from .gf import format_element

        u, v = self.rep
        return f"({format_element(self.ctx, u)},{format_element(self.ctx, v)})"


def canonical_key(ctx, t, w):
    if not w:
        raise ValueError("zero vector has no projective point")
    u, v = _unpack(ctx, w)
    lead = u if u else v
    c = ctx.subfield_step(t)
    k = ctx.log(lead)
    lam = ctx.exp(-(k - k % c))
    return _pack(ctx, ctx.mul(lam, u), ctx.mul(lam, v))


def _point_count(ctx, t, dim):
    qt = ctx.q**t
    return (qt**dim - 1) // (qt - 1)


def linear_set_points(U, t):
    """Sorted distinct points <w>_{F_{q^t}} for nonzero w in U."""
    return sorted(point_weights(U, t))


def point_weights(U, t):
    """{ProjPoint: weight}; the weight is read off the number of vectors of U
    on the point (q^w - 1 of them)."""
    ctx = U.ctx
    _check_t(ctx, t)
    counts = {}
    for w in U.vectors():
        k = canonical_key(ctx, t, w)
        counts[k] = counts.get(k, 0) + 1
    out = {}
    for k, c in counts.items():
        wt = 0
        while ctx.q**wt - 1 < c:
            wt += 1
        if ctx.q**wt - 1 != c:
            raise ArithmeticError("point multiplicity is not of the form q^w - 1")
        out[ProjPoint(k, t, ctx)] = wt
    return out


def _span_of_points(ctx, t, reps):
    scal = subfield_fp_basis(ctx, t)
    return [_scale(ctx, lam, w) for w in reps for lam in scal]


def weight(U, S, t):
    """dim_{F_q}(U meet Z), Z the F_{q^t}-span of the points in S."""
    ctx = U.ctx
    _check_t(ctx, t)
    reps = [P.key if isinstance(P, ProjPoint) else _pack(ctx, *map(ctx.raw, P)) for P in S]
    zvecs = _span_of_points(ctx, t, reps)
    dim_z = fplin.rank(zvecs, ctx.p, 2 * ctx.d)
    dim_sum = fplin.rank(U.fp_basis + zvecs, ctx.p, 2 * ctx.d)
    dim_p = U._span.dim + dim_z - dim_sum
    return dim_p // ctx.e


def is_scattered_subspace(U, m):
    """(True, None) if every <w>_{F_{q^m}} meets U in dimension <= 1 over F_q,
    else (False, point of weight >= 2) for the first such w."""
    ctx = U.ctx
    _check_t(ctx, m)
    step_m = ctx.subfield_step(m)
    step_1 = ctx.subfield_step(1)
    lams = [ctx.exp(k) for k in range(0, ctx.N, step_m) if k % step_1]
    for w in U.vectors():
        for lam in lams:
            if U.contains_packed(_scale(ctx, lam, w)):
                return False, ProjPoint(canonical_key(ctx, m, w), m, ctx)
    return True, None


# ---------------------------------------------------------------------------
# lines and the pseudoregulus check (t' = 2)


@dataclass(frozen=True)
class ProjLine:
    points: tuple

    def meets(self, other):
        return not set(self.points).isdisjoint(other.points)

    def text(self):
        return "[" + " ".join(P.text() for P in self.points[:2]) + "]"


def all_points(ctx, t):
    """Every point of PG(2t'-1, q^t), sorted."""
    keys = set()
    for w in range(1, ctx.order * ctx.order):
        keys.add(canonical_key(ctx, t, w))
    return [ProjPoint(k, t, ctx) for k in sorted(keys)]


def _line_keys(ctx, t, k1, k2):
    lams = ctx.subfield_elements(t)
    pts = {k1}
    for lam in lams:
        pts.add(canonical_key(ctx, t, _pack_add(ctx, k2, _scale(ctx, lam, k1))))
    return tuple(sorted(pts))


def gaussian_line_count(Q):
    """Number of lines of PG(3, Q)."""
    return (Q**4 - 1) * (Q**4 - Q) // ((Q**2 - 1) * (Q**2 - Q))


LINE_LIMIT = 8


def all_lines(ctx, t, limit=LINE_LIMIT):
    """Every line of PG(3, q^t) (t' = 2) as sorted point tuples."""
    if ctx.n != 2 * t:
        raise TowerMismatch(f"line enumeration needs n = 2t, got n={ctx.n}, t={t}")
    if ctx.q**t > limit:
        raise BudgetExceeded(f"q^t = {ctx.q ** t} exceeds the line budget {limit}")
    pts = [P.key for P in all_points(ctx, t)]
    covered = set()
    lines = []
    for i, a in enumerate(pts):
        for b in pts[i + 1:]:
            if (a, b) in covered:
                continue
            line = _line_keys(ctx, t, a, b)
            for x in line:
                for y in line:
                    covered.add((x, y))
            lines.append(line)
    expected = gaussian_line_count(ctx.q**t)
    if len(lines) != expected:
        raise ArithmeticError(f"found {len(lines)} lines, expected {expected}")
    return [ProjLine(tuple(ProjPoint(k, t, ctx) for k in line)) for line in lines]


@dataclass
class PseudoregulusReport:
    scattered: bool
    m_expected: int
    m_found: int
    disjoint: bool
    transversals: list
    lines: list
    point_count: int
    weight_t_lines: int = 0
    candidate_covers: int = 0

    @property
    def transversal_count(self):
        return len(self.transversals)

    @property
    def positive(self):
        return (
            self.scattered
            and self.m_found == self.m_expected
            and self.disjoint
            and self.transversal_count == 2
        )

    def record(self):
        return {
            "positive": self.positive,
            "scattered": self.scattered,
            "m_expected": self.m_expected,
            "m_found": self.m_found,
            "disjoint": self.disjoint,
            "transversal_count": self.transversal_count,
            "points": self.point_count,
            "weight_t_lines": self.weight_t_lines,
            "candidate_covers": self.candidate_covers,
            "lines": [line.text() for line in self.lines],
            "transversals": [line.text() for line in self.transversals],
        }

    def to_json(self):
        return json.dumps(self.record(), separators=(",", ":"))


def _disjoint_covers(lines, on_set, target):
    """All sets of pairwise disjoint lines whose L_U-points partition ``target``.

    Exact-cover search: the smallest uncovered point must lie on the next
    chosen line.  Yields tuples of line indices in increasing search order.
    """
    by_point = {}
    for i, pts in enumerate(on_set):
        for P in pts:
            by_point.setdefault(P, []).append(i)
    full = [set(line.points) for line in lines]
    order = sorted(target)

    def rec(chosen, covered, used):
        rest = [P for P in order if P not in covered]
        if not rest:
            yield tuple(chosen)
            return
        for i in by_point.get(rest[0], []):
            if on_set[i] & covered or full[i] & used:
                continue
            chosen.append(i)
            yield from rec(chosen, covered | on_set[i], used | full[i])
            chosen.pop()

    yield from rec([], frozenset(), frozenset())


def pseudoregulus_check(f, t, limit=LINE_LIMIT):
    """Test whether L_f in PG(3, q^t) is of pseudoregulus type.

    Searches for (q^n-1)/(q^t-1) pairwise disjoint lines of weight t (they
    necessarily partition L_f) admitting exactly two transversal lines
    disjoint from L_f.  For q = 2 every secant line already has weight >= 2,
    so the weight-t lines alone do not single out the pseudoregulus and the
    search over disjoint covers is needed.  The first qualifying cover in
    search order is reported.
    """
    ctx = f.ctx
    if t < 2 or ctx.n != 2 * t:
        raise TowerMismatch(f"pseudoregulus check needs t' = 2 and t >= 2, got n={ctx.n}, t={t}")
    U = graph_subspace(f, 0)
    weights = point_weights(U, t)
    m_expected = (ctx.q**ctx.n - 1) // (ctx.q**t - 1)
    scattered = all(w == 1 for w in weights.values())
    report = PseudoregulusReport(scattered, m_expected, 0, False, [], [], len(weights))
    if not scattered:
        return report
    lines = all_lines(ctx, t, limit)
    heavy, heavy_on, empty = [], [], []
    for line in lines:
        on = frozenset(P for P in line.points if P in weights)
        if not on:
            empty.append(line)
        elif len(on) >= t and weight(U, line.points[:2], t) == t:
            heavy.append(line)
            heavy_on.append(on)
    report.weight_t_lines = len(heavy)
    best = None
    for cover in _disjoint_covers(heavy, heavy_on, set(weights)):
        report.candidate_covers += 1
        chosen = [heavy[i] for i in cover]
        trans = [T for T in empty if all(T.meets(s) for s in chosen)]
        if best is None or (len(best[1]) != 2 and len(trans) == 2):
            best = (chosen, trans)
    if best is not None:
        chosen, trans = best
        report.lines = chosen
        report.m_found = len(chosen)
        report.disjoint = True
        report.transversals = trans
    return report
