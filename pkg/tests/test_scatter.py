import itertools
import json
import random

import pytest

from oracles import brute_property, naive_of
from partscat.errors import BudgetExceeded, HypothesisNotMet, NotDivisor
from partscat.gf import tower_field
from partscat.linpoly import LinPoly
from partscat.scatter import (
    PROPERTIES,
    ScatterReport,
    canonical_property,
    check_L_degree_bound,
    check_L_inequality,
    criterion,
    curve_numerator,
    exceptionality_probe,
    is_L_partial_criterion,
    is_L_partial_oracle,
    is_R_partial_criterion,
    is_R_partial_oracle,
    is_scattered_criterion,
    is_scattered_oracle,
    l_partial_via_curve,
    oracle,
    rho_range,
    violates,
)

SHORT = {"scattered": "scattered", "L-partial": "L", "R-partial": "R"}


@pytest.fixture(scope="module")
def F4():
    return tower_field(2, 1, 2)


@pytest.fixture(scope="module")
def F16():
    return tower_field(2, 2, 2)


def all_binomials(F, i=1, j=3):
    for a in range(F.order):
        for b in range(F.order):
            yield LinPoly.from_terms(F, {i: a, j: b})


def test_scattered_examples(F4, F16):
    assert is_scattered_oracle(LinPoly.monomial(F4, 1)).holds
    rep = is_scattered_oracle(LinPoly.identity(F16))
    assert not rep.holds and violates(LinPoly.identity(F16), "scattered", 1, 0, *rep.witness)
    rep = is_scattered_oracle(LinPoly.monomial(F16, 2))
    y, z = rep.witness
    r = F16.div(y, z)
    assert F16.in_subfield(r, 2) and not F16.in_subfield(r, 1)


def test_L_examples(F16):
    assert is_L_partial_oracle(LinPoly.monomial(F16, 2), 2).holds
    rng = random.Random(1)
    for _ in range(10):
        f = LinPoly(F16, [rng.randrange(16) for _ in range(4)])
        assert is_L_partial_oracle(f, 4).holds
    rep = is_L_partial_oracle(LinPoly.identity(F16), 2)
    assert not rep.holds
    assert not F16.in_subfield(F16.div(*rep.witness), 2)


def test_R_examples(F16):
    F = tower_field(2, 3, 2)
    for u in (1, 2, 4, 5):
        assert is_R_partial_oracle(LinPoly.monomial(F, u), 3).holds
    rng = random.Random(2)
    for _ in range(10):
        f = LinPoly(F16, [rng.randrange(16) for _ in range(4)])
        assert is_R_partial_oracle(f, 1).holds
    rep = is_R_partial_oracle(LinPoly.monomial(F16, 2), 2)
    assert not rep.holds
    r = F16.div(*rep.witness)
    assert F16.in_subfield(r, 2) and not F16.in_subfield(r, 1)


def test_criterion_examples():
    F = tower_field(2, 3, 2)
    assert is_R_partial_criterion(LinPoly.monomial(F, 1), 3).holds
    assert is_R_partial_criterion(LinPoly.identity(F), 1).holds
    assert is_L_partial_criterion(LinPoly.identity(F), 6).holds
    F6 = tower_field(2, 2, 3)
    f = LinPoly.from_terms(F6, {1: 1, 4: 1})
    assert is_R_partial_criterion(f, 2).holds == is_R_partial_oracle(f, 2).holds
    F16 = tower_field(2, 2, 2)
    f = LinPoly.from_terms(F16, {1: 1, 3: F16.generator})
    assert is_L_partial_criterion(f, 2).holds == is_L_partial_oracle(f, 2).holds


def test_rho_range_sizes(F16):
    assert len(rho_range(F16, "R", 2)) == 4 - 2
    assert len(rho_range(F16, "L", 2)) == 16 - 4
    assert len(rho_range(F16, "scattered", 1)) == 16 - 2


@pytest.mark.parametrize("q,t,tp", [(2, 2, 2), (3, 1, 2), (2, 1, 3)])
def test_fiber_scan_matches_definition_exhaustive(q, t, tp):
    F = tower_field(q, t, tp)
    K = naive_of(F)
    n = F.n
    pairs = list(itertools.combinations(range(n), 2))
    for i, j in pairs:
        for f in all_binomials(F, i, j):
            for prop in PROPERTIES:
                tt = 1 if prop == "scattered" else t
                for ell in range(n):
                    got = oracle(f, prop, tt, ell)
                    want = brute_property(K, f.coeffs, q, SHORT[prop], tt, ell)
                    assert got.holds == want
                    if not got.holds:
                        assert violates(f, prop, tt, ell, *got.witness)


def test_naive_scan_and_witness_order(F16):
    for f in all_binomials(F16):
        for prop in PROPERTIES:
            t = 1 if prop == "scattered" else 2
            a = oracle(f, prop, t)
            b = oracle(f, prop, t, naive=True)
            assert a.holds == b.holds and a.witness == b.witness


def test_criterion_witness_violates(F16):
    for f in all_binomials(F16):
        for prop in PROPERTIES:
            t = None if prop == "scattered" else 2
            rep = criterion(f, prop, t)
            if not rep.holds:
                assert violates(f, prop, rep.t, 0, *rep.witness)


def test_scattered_is_L_and_R(F16):
    F = tower_field(2, 3, 2)
    rng = random.Random(4)
    for _ in range(100):
        f = LinPoly(F, [rng.randrange(F.order) for _ in range(F.n)])
        s = is_scattered_criterion(f).holds
        assert s == (is_L_partial_criterion(f, 3).holds and is_R_partial_criterion(f, 3).holds)
        assert s == is_scattered_oracle(f).holds


def test_random_criterion_equals_oracle_f81():
    F = tower_field(3, 2, 2)
    rng = random.Random(8)
    for _ in range(40):
        f = LinPoly(F, [rng.randrange(F.order) for _ in range(F.n)])
        for prop in PROPERTIES:
            t = None if prop == "scattered" else 2
            assert criterion(f, prop, t).holds == oracle(f, prop, t).holds


def test_not_divisor(F16):
    with pytest.raises(NotDivisor):
        oracle(LinPoly.identity(F16), "L", 3)


def test_report_invariants(F16):
    with pytest.raises(ValueError):
        ScatterReport("scattered", 1, 0, False, None)
    rep = oracle(LinPoly.identity(F16), "L", 2)
    rec = json.loads(rep.to_json())
    assert list(rec) == ["property", "t", "ell", "method", "holds", "witness"]
    assert canonical_property("r") == "R-partial"


def test_curve_numerator(F16):
    f = LinPoly.monomial(F16, 2)
    g = F16.generator
    assert curve_numerator(f, 0, g, g) == 0
    for lam in F16.subfield_nonzero(1):
        assert curve_numerator(f, 0, g, F16.mul(lam, g)) == 0
    x, y = g, F16.mul(g, g)
    want = F16.sub(F16.mul(F16.frob(x, 2), y), F16.mul(F16.frob(y, 2), x))
    assert curve_numerator(f, 0, x, y) == want


def test_curve_agrees_with_oracle(F16):
    for f in all_binomials(F16, 0, 3):
        for ell in range(4):
            c = l_partial_via_curve(f, 2, ell)
            o = oracle(f, "L", 2, ell)
            assert c.holds == o.holds
            if not c.holds:
                assert violates(f, "L", 2, ell, *c.witness)
    assert l_partial_via_curve(LinPoly.monomial(F16, 2), 2).holds
    assert not l_partial_via_curve(LinPoly.identity(F16), 2).holds


def test_probe_examples(F4):
    F = tower_field(2, 2, 2)
    assert all(h for _, h in exceptionality_probe(LinPoly.monomial(F, 1), 2, "R", [1, 2, 3]))
    # N_{16/4}(-g) = g^5 != 1; m = 7 is coprime to k(q^n - 1) = 15
    f = LinPoly.from_terms(F, {3: 1, 1: F.generator})
    assert exceptionality_probe(f, 2, "R", [1], limit=1 << 16) == [(1, True)]
    assert exceptionality_probe(LinPoly.identity(F4), 1, "scattered", [1]) == [(1, False)]
    with pytest.raises(BudgetExceeded):
        exceptionality_probe(f, 2, "R", [7])


def test_degree_bound_examples():
    assert check_L_degree_bound(4, 3, 2, 0)
    assert not check_L_degree_bound(20, 2, 2, 1)


def test_inequality_examples():
    assert check_L_inequality(2, 4, 3, 2, 0, 1) in (True, False)
    assert not check_L_inequality(2, 40, 2, 2, 0, 1)
    with pytest.raises(HypothesisNotMet):
        check_L_inequality(2, 8, 2, 2, 1)


def test_inequality_is_exact():
    # x <= a*sqrt(N) decided on squares; N = 4^n is a perfect square
    for n in range(2, 12, 2):
        for k in range(2, 5):
            q = 2
            a = (q**k - q - 1) * (q**k - q - 2)
            lhs = q**n - q**2 * (q**k - q) - 2 * (q**k - 1)
            assert check_L_inequality(q, n, k, 2, 0, 0) == (lhs <= a * 2 ** (n // 2))
