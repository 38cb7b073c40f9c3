"""Named verification suites, one per acceptance criterion.

Each suite returns a :class:`SuiteResult` with an ordered list of checks.
Randomised suites draw from ``random.Random(f"{seed}:{name}")`` so a run is
reproducible from the seed alone.
"""

import itertools
import json
import random
import time
from dataclasses import dataclass, field

from .families import (
    binomial,
    binomial_is_R_partial,
    enumerate_form11,
    family11,
    family11_is_R_partial,
    form11_formula,
    lp_is_scattered,
    lp_poly,
    lp_status_odd_n,
    monomial,
    monomial_status,
    trinomial,
    trinomial_expression,
)
from .geometry import graph_subspace, is_scattered_subspace, pseudoregulus_check
from .gf import tower_field
from .groups import (
    aut_group_bruteforce,
    aut_group_contains,
    binomial_aut_expected,
    diagonal_group,
    weak_equiv_family11,
)
from .linpoly import LinPoly, adjoint
from .scatter import check_L_degree_bound, check_L_inequality, criterion, oracle

__all__ = ["SuiteResult", "Check", "SUITES", "run_suite", "suite_names"]


@dataclass
class Check:
    label: str
    passed: bool
    detail: str = ""

    def record(self):
        return {"check": self.label, "pass": self.passed, "detail": self.detail}


@dataclass
class SuiteResult:
    name: str
    title: str
    target_s: float
    checks: list = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, label, passed, detail=""):
        self.checks.append(Check(label, bool(passed), str(detail)))

    def summary(self):
        return {
            "suite": self.name,
            "pass": self.passed,
            "checks": len(self.checks),
            "failed": sum(1 for c in self.checks if not c.passed),
        }

    def to_json(self):
        return json.dumps(self.summary(), separators=(",", ":"))


def _rng(seed, name):
    return random.Random(f"{seed}:{name}")


def _agree(res, label, pairs):
    """pairs: iterable of (item, lhs, rhs); records count and first mismatch."""
    total = bad = 0
    first = None
    for item, lhs, rhs in pairs:
        total += 1
        if lhs != rhs:
            bad += 1
            if first is None:
                first = item
    detail = f"{total - bad}/{total} agree"
    if first is not None:
        detail += f"; first mismatch {first}"
    res.add(label, bad == 0 and total > 0, detail)


def _f16_binomials():
    F = tower_field(2, 2, 2)
    for a in range(F.order):
        for b in range(F.order):
            yield F, (a, b), LinPoly.from_terms(F, {1: a, 3: b})


def _random_polys(F, rng, count):
    out = []
    while len(out) < count:
        f = LinPoly(F, [rng.randrange(F.order) for _ in range(F.n)])
        if not f.is_zero():
            out.append(f)
    return out


# ---------------------------------------------------------------------------


def suite_criterion_equivalence(res, seed):
    for prop in ("L-partial", "R-partial", "scattered"):
        t = None if prop == "scattered" else 2
        _agree(
            res,
            f"{prop}: criterion = oracle on 256 binomials over F_16",
            ((ab, criterion(f, prop, t).holds, oracle(f, prop, t).holds) for _, ab, f in _f16_binomials()),
        )


def suite_monomial_characterization(res, seed):
    for q, n in itertools.product((2, 3), (4, 6)):
        F = tower_field(q, 1, n)
        rows = []
        for u in range(1, n):
            f = monomial(F, u)
            for t in (d for d in range(1, n + 1) if n % d == 0):
                st = monomial_status(u, n, t)
                got = (oracle(f, "L", t).holds, oracle(f, "R", t).holds, oracle(f, "scattered").holds)
                rows.append(((u, t), got, (st.L, st.R, st.scattered)))
        _agree(res, f"q={q}, n={n}: oracle = gcd conditions", rows)


def suite_form11_counts(res, seed):
    for q, t, tp, expected in ((2, 2, 2, 180), (3, 2, 2, 5760), (2, 3, 2, 3528), (2, 2, 3, 181440)):
        F = tower_field(q, t, tp)
        formula = form11_formula(q, t, tp)
        count = bad = 0
        for a, ok in enumerate_form11(F, t):
            if ok:
                count += 1
                if not criterion(family11(F, a, 1, t), "R", t).holds:
                    bad += 1
        res.add(
            f"(q,t,t')=({q},{t},{tp}): count = formula = {expected}",
            count == formula == expected,
            f"enumerated {count}, formula {formula}",
        )
        res.add(f"(q,t,t')=({q},{t},{tp}): every counted member passes the R criterion", bad == 0, f"{bad} failures")


def suite_binomial_norm(res, seed):
    for q, tp, t, k, s, expected in ((2, 2, 2, 1, 1, 10), (2, 2, 3, 1, 1, None)):
        F = tower_field(q, t, tp)
        rows = []
        hits = 0
        for alpha in F.nonzero():
            norm_ok = binomial_is_R_partial(F, alpha, k, s, t)[0]
            hits += norm_ok
            rows.append((F.log(alpha), norm_ok, oracle(binomial(F, alpha, k, s, t), "R", t).holds))
        label = f"(q,n,t,k,s)=({q},{F.n},{t},{k},{s})"
        _agree(res, f"{label}: norm condition = oracle", rows)
        if expected is not None:
            res.add(f"{label}: {expected} of {F.N} alpha are R-partial", hits == expected, f"{hits} found")


def suite_trinomial_condition(res, seed):
    F = tower_field(2, 2, 3)
    rows = (
        ((a, b), trinomial_expression(F, a, b, 2) != 0, criterion(trinomial(F, a, b, 1, 2), "R", 2).holds)
        for a in range(F.order)
        for b in range(F.order)
    )
    _agree(res, "q=2, t=2, n=6: expression nonzero = criterion on 4096 pairs", rows)


def _geometric_rows(items):
    for key, f, t in items:
        scat, _ = is_scattered_subspace(graph_subspace(f, 0), t)
        yield key, oracle(f, "R", t).holds, scat


def suite_geometric_equivalence(res, seed):
    _agree(
        res,
        "F_16 binomials, t=2: R oracle = scattered U_f",
        _geometric_rows((ab, f, 2) for _, ab, f in _f16_binomials()),
    )
    F = tower_field(2, 1, 6)
    polys = _random_polys(F, _rng(seed, res.name), 100)
    for t in (2, 3):
        _agree(
            res,
            f"100 random polynomials over F_64, t={t}: R oracle = scattered U_f",
            _geometric_rows((str(f), f, t) for f in polys),
        )


def _status(f, t):
    return oracle(f, "L", t).holds, oracle(f, "R", t).holds


def suite_adjoint_preservation(res, seed):
    _agree(
        res,
        "F_16 binomials, t=2: L/R of f = L/R of adjoint",
        ((ab, _status(f, 2), _status(adjoint(f), 2)) for _, ab, f in _f16_binomials()),
    )
    F = tower_field(2, 1, 6)
    polys = _random_polys(F, _rng(seed, res.name), 200)
    for t in (2, 3):
        _agree(
            res,
            f"200 random polynomials over F_64, t={t}: L/R of f = L/R of adjoint",
            ((str(f), _status(f, t), _status(adjoint(f), t)) for f in polys),
        )


def suite_lp_odd_norm_one(res, seed):
    F = tower_field(2, 3, 3)
    ok = 0
    stated = 0
    for delta in F.nonzero():
        f = lp_poly(F, delta, 1)
        L, R = criterion(f, "L", 3).holds, criterion(f, "R", 3).holds
        ok += not L and not R
        stated += lp_status_odd_n(F, delta, 1, 3) == (False, False)
    res.add("q=2, n=9, t=3: LP neither L nor R for every delta", ok == F.N, f"{ok}/{F.N}")
    res.add("norm of every delta in F_512^* is 1", stated == F.N, f"{stated}/{F.N}")


def suite_lp_scattered_count(res, seed):
    F = tower_field(3, 1, 4)
    rows = []
    count = 0
    for delta in F.nonzero():
        by_norm = lp_is_scattered(F, delta, 1)
        count += by_norm
        rows.append((F.log(delta), by_norm, oracle(lp_poly(F, delta, 1), "scattered").holds))
    _agree(res, "q=3, n=4: norm condition = oracle", rows)
    res.add("q=3, n=4: 40 delta give a scattered LP polynomial", count == 40, f"{count} found")


def _seeded_form11(F, t, rng, want_R, count):
    out = []
    while len(out) < count:
        a = [rng.randrange(F.order) for _ in range(F.tprime)]
        if any(a) and family11_is_R_partial(F, a, 1, t) == want_R:
            out.append(a)
    return out


def suite_pseudoregulus(res, seed):
    F = tower_field(2, 2, 2)
    rng = _rng(seed, res.name)
    good = 0
    for a in _seeded_form11(F, 2, rng, True, 20):
        r = pseudoregulus_check(family11(F, a, 1, 2), 2)
        good += r.positive and r.m_found == 5 and r.disjoint and r.transversal_count == 2
    res.add("20 R-partial form11: 5 disjoint weight-2 lines and 2 transversals", good == 20, f"{good}/20")
    neg = sum(1 for a in _seeded_form11(F, 2, rng, False, 5) if not pseudoregulus_check(family11(F, a, 1, 2), 2).positive)
    res.add("5 non-R-partial form11: report negative", neg == 5, f"{neg}/5")


def suite_automorphism_groups(res, seed):
    for q, t, tp in ((2, 2, 2), (2, 2, 3), (2, 3, 2)):
        F = tower_field(q, t, tp)
        diag = diagonal_group(F, t, 1)
        total = bad = 0
        for a, ok in enumerate_form11(F, t):
            if ok:
                total += 1
                bad += not aut_group_contains(family11(F, a, 1, t), diag)
        res.add(
            f"(q,t,t')=({q},{t},{tp}): diag(a, a^q), a in F_(q^t)^*, stabilizes every R-partial form11",
            bad == 0 and total > 0,
            f"{total - bad}/{total}",
        )
    F = tower_field(2, 2, 3)
    alpha = next(x for x in F.nonzero() if binomial_is_R_partial(F, x, 2, 1, 2)[0])
    group = aut_group_bruteforce(binomial(F, alpha, 2, 1, 2))
    expected = binomial_aut_expected(2, 2, 3, 2, 1)
    res.add(
        "q=2, t=2, t'=3, k=2, s=1: brute-force group has order 3",
        len(group) == 3 == expected.order,
        f"alpha=g^{F.log(alpha)}, |G|={len(group)}",
    )
    res.add("brute-force group equals the stated diagonal group", group == expected.members(F))


def suite_weak_equivalence(res, seed):
    F = tower_field(2, 3, 2)
    rng = _rng(seed, res.name)
    good = 0
    fs = _seeded_form11(F, 3, rng, True, 10)
    gs = _seeded_form11(F, 3, rng, True, 10)
    for aF, aG in zip(fs, gs):
        r = weak_equiv_family11(F, aF, 1, aG, 2, 3)
        good += r.equivalent and r.verified
    res.add("q=2, t=3, t'=2, s=1, s'=2: constructed maps send U_f onto U_g", good == 10, f"{good}/10")


def suite_necessary_conditions(res, seed):
    F = tower_field(2, 2, 2)
    found = violations = 0
    for k in (1, 2, 3):
        for mid in itertools.product(range(F.order), repeat=k - 1):
            f = LinPoly(F, [0, *mid, 1])
            if f.is_monomial() or not oracle(f, "L", 2).holds:
                continue
            found += 1
            ok = check_L_degree_bound(F.n, k, 2, 0) and check_L_inequality(2, F.n, k, 2, 0, f.min_exponent)
            violations += not ok
    res.add(
        "F_16, t=2: non-monomial 0-normalized L-partial of q-degree <= 3 satisfy both bounds",
        violations == 0,
        f"{found} found, {violations} violations",
    )


# name -> (function, title, runtime target in seconds)
SUITES = {
    "criterion-equivalence": (suite_criterion_equivalence, "criterion = oracle on F_16 binomials", 10),
    "monomial-characterization": (suite_monomial_characterization, "monomial gcd conditions", 30),
    "form11-counts": (suite_form11_counts, "invertible form11 counts", 120),
    "binomial-norm": (suite_binomial_norm, "binomial norm condition", 30),
    "trinomial-condition": (suite_trinomial_condition, "trinomial norm/trace condition", 120),
    "geometric-equivalence": (suite_geometric_equivalence, "R-partial = scattered U_f", 120),
    "adjoint-preservation": (suite_adjoint_preservation, "adjoint preserves L/R", 60),
    "lp-odd-norm-one": (suite_lp_odd_norm_one, "LP with n odd and norm 1", 60),
    "lp-scattered-count": (suite_lp_scattered_count, "LP scattered count", 60),
    "pseudoregulus": (suite_pseudoregulus, "pseudoregulus type", 120),
    "automorphism-groups": (suite_automorphism_groups, "automorphism groups", 900),
    "weak-equivalence": (suite_weak_equivalence, "constructive weak equivalence", 60),
    "necessary-conditions": (suite_necessary_conditions, "degree bound and inequality", 120),
}


def suite_names():
    return list(SUITES)


def run_suite(name, seed=0, check_time=True):
    """Run one suite; unknown names raise KeyError."""
    fn, title, target = SUITES[name]
    res = SuiteResult(name, title, target)
    t0 = time.perf_counter()
    fn(res, seed)
    res.elapsed = time.perf_counter() - t0
    if check_time:
        res.add(f"runtime below {target} s", res.elapsed < target, f"{res.elapsed:.2f} s")
    return res
