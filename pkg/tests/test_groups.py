import itertools

import pytest

from oracles import brute_stabilizer, naive_of
from partscat.errors import BudgetExceeded, HypothesisNotMet, NotInvertible, SmallT
from partscat.families import binomial, binomial_is_R_partial, family11, lz2_quadrinomial, quadrinomial
from partscat.gf import tower_field
from partscat.groups import (
    SUB_T,
    SemilinearMap,
    apply_map,
    are_equivalent_bruteforce,
    aut_group_bruteforce,
    aut_group_contains,
    aut_group_naive,
    binomial_aut_expected,
    binomial_class_count_formula,
    check_expected_group,
    compose_maps,
    count_weak_classes,
    diagonal_group,
    expected_polynomial,
    lz2_aut_expected,
    lz2_hypothesis,
    quadrinomial_aut_expected,
    quadrinomial_hypothesis,
    smallest_quadrinomial_instance,
    stabilizes,
    verify_weak_map,
    weak_equiv_family11,
)
from partscat.linpoly import LinPoly
from partscat.scatter import oracle


@pytest.fixture(scope="module")
def F4():
    return tower_field(2, 1, 2)


@pytest.fixture(scope="module")
def F16():
    return tower_field(2, 2, 2)


@pytest.fixture(scope="module")
def F64():
    return tower_field(2, 3, 2)


def test_semilinear_map_basics(F16):
    g = F16.generator
    I = SemilinearMap(F16, ((1, 0), (0, 1)))
    assert apply_map(I, (g, 3)) == (g, 3)
    D = SemilinearMap(F16, ((g, 0), (0, F16.frob(g, 1))))
    x = F16.exp(7)
    assert D((x, x)) == (F16.mul(g, x), F16.mul(F16.frob(g, 1), x))
    Fr = SemilinearMap(F16, ((1, 0), (0, 1)), 1)
    assert compose_maps(Fr, Fr).frob == 2
    assert compose_maps(Fr, Fr)((g, 0)) == (F16.pfrob(g, 2), 0)
    with pytest.raises(NotInvertible):
        SemilinearMap(F16, ((1, 1), (1, 1)))
    with pytest.raises(NotInvertible):
        SemilinearMap(F16, scope=SUB_T, images=[0] * 8, t=2)
    assert I.record()["scope"] == "full-field"


@pytest.mark.parametrize("coeffs", [[0, 1], [1, 1], [1, 0], [2, 3]])
def test_groups_agree_f4(F4, coeffs):
    f = LinPoly(F4, coeffs)
    fast = aut_group_bruteforce(f)
    assert fast == aut_group_naive(f)
    K = naive_of(F4)
    assert sorted(fast) == sorted(brute_stabilizer(K, list(f.coeffs), 2))


def test_groups_agree_f8():
    F = tower_field(2, 1, 3)
    K = naive_of(F)
    for coeffs in ([0, 1, 0], [0, 1, 1], [3, 0, 5]):
        f = LinPoly(F, coeffs)
        assert sorted(aut_group_bruteforce(f)) == sorted(brute_stabilizer(K, coeffs, 2))


@pytest.mark.parametrize("q,t,tp", [(2, 2, 2), (3, 1, 3), (2, 1, 3)])
def test_monomial_group_order(q, t, tp):
    F = tower_field(q, t, tp)
    for s in range(1, F.n):
        if F.n % s == 0 and s != 1:
            continue
        f = LinPoly.monomial(F, s)
        G = aut_group_bruteforce(f)
        assert len(G) == F.order - 1
        assert set(G) == set(diagonal_group(F, F.n, s))


def test_monomial_group_n2_is_larger():
    # over F_{q^2} the graph of x^q is a Baer subline, stabilized by a copy of GL(2, q)
    F = tower_field(3, 1, 2)
    assert len(aut_group_bruteforce(LinPoly.monomial(F, 1))) == (9 - 1) * (9 - 3)


def test_identity_group(F16):
    f = LinPoly.identity(F16)
    G = aut_group_bruteforce(f)
    assert aut_group_contains(f, [((a, 0), (0, a)) for a in F16.nonzero()])
    assert all(stabilizes(f, A) for A in G)
    assert len(G) % 15 == 0


def test_binomial_group_f64(F64):
    F = tower_field(2, 2, 3)
    alpha = next(a for a in F.nonzero() if binomial_is_R_partial(F, a, 2, 1, 2)[0])
    f = binomial(F, alpha, 2, 1, 2)
    desc = binomial_aut_expected(2, 2, 3, 2, 1)
    assert desc.order == 3 and desc.params["equality"]
    res = check_expected_group(f, desc)
    assert res == {"order": 3, "containment": True, "equality": True}
    with pytest.raises(HypothesisNotMet):
        binomial_aut_expected(2, 2, 2, 2, 1)


def test_family_contains_diagonal(F16):
    for a in itertools.product(range(16), repeat=2):
        if not any(a):
            continue
        f = family11(F16, list(a), 1, 2)
        assert aut_group_contains(f, diagonal_group(F16, 2, 1))


def test_perturbed_stabilizer_rejected(F16):
    f = family11(F16, [F16.generator, 1], 1, 2)
    for A in diagonal_group(F16, 2, 1)[1:]:
        (a, b), (c, d) = A
        B = ((a, F16.add(b, 1)), (c, d))
        assert not aut_group_contains(f, [B])
    assert not aut_group_contains(f, [((1, 1), (1, 1))])


def test_equivalence_witnesses(F16):
    f = binomial(F16, F16.generator, 1, 1, 2)
    M = are_equivalent_bruteforce(f, f)
    assert M is not None and M.frob == 0
    tw = LinPoly(F16, [F16.pfrob(c, 1) for c in f.coeffs])
    M = are_equivalent_bruteforce(f, tw)
    assert M is not None
    assert stabilizes_pair(f, tw, M)


def stabilizes_pair(f, g, M):
    ctx = f.ctx
    for x in ctx.nonzero():
        u, v = M((x, f.eval_raw(x)))
        if g.eval_raw(u) != v:
            return False
    return True


def test_equivalence_filter_sound(F16):
    polys = [binomial(F16, a, 1, 1, 2) for a in (1, 2, 3, 5, 7)] + [LinPoly.monomial(F16, 1)]
    for f, g in itertools.combinations(polys, 2):
        a = are_equivalent_bruteforce(f, g, use_filter=True)
        b = are_equivalent_bruteforce(f, g, use_filter=False)
        assert (a is None) == (b is None)
        if b is not None:
            assert stabilizes_pair(f, g, b)
            for prop in ("R", "L"):
                assert oracle(f, prop, 2).holds == oracle(g, prop, 2).holds


def test_budget(F16):
    F = tower_field(3, 2, 2)
    with pytest.raises(BudgetExceeded):
        aut_group_bruteforce(LinPoly.identity(F))
    with pytest.raises(BudgetExceeded):
        aut_group_naive(LinPoly.identity(F16), limit=8)


def test_weak_equivalence_positive(F64):
    a = [F64.generator, 1]
    b = [1, F64.exp(10)]
    res = weak_equiv_family11(F64, a, 1, b, 2, 3)
    eq, M = res
    assert eq and res.verified and res.method == "constructed"
    assert verify_weak_map(M, family11(F64, a, 1, 3), family11(F64, b, 2, 3), 3)
    res = weak_equiv_family11(F64, a, 1, a, 1, 3)
    assert res.equivalent and res.verified and res.witness.frob == 0
    for x in F64.nonzero():
        fx = family11(F64, a, 1, 3).eval_raw(x)
        assert res.witness((x, fx)) == (x, fx)


def test_weak_map_verifier_rejects(F64):
    a = [F64.generator, 1]
    res = weak_equiv_family11(F64, a, 1, a, 1, 3)
    assert not verify_weak_map(res.witness, family11(F64, a, 1, 3), family11(F64, [1, 1], 1, 3), 3)


def test_weak_equivalence_negative():
    F = tower_field(2, 5, 2)
    res = weak_equiv_family11(F, [F.generator, 1], 1, [F.generator, 1], 2, 5)
    assert not res.equivalent and res.witness is None and res.method == "by-theorem"
    with pytest.raises(NotInvertible):
        weak_equiv_family11(tower_field(2, 3, 2), [1, 1], 1, [1, 0], 1, 3)


def test_weak_class_counts():
    assert count_weak_classes(3) == 1
    assert count_weak_classes(5) == 2
    assert count_weak_classes(12) == 2
    with pytest.raises(SmallT):
        count_weak_classes(2)


def test_class_count_formula_fraction():
    from fractions import Fraction

    assert binomial_class_count_formula(4, 2) == Fraction(21, 6)
    assert binomial_class_count_formula(2, 1) == 0


def test_quadrinomial_hypothesis_smallest():
    assert smallest_quadrinomial_instance(2) == (1, 3, 7)
    assert smallest_quadrinomial_instance(2, t_max=6) is None
    for t in range(2, 7):
        for s in range(1, 2 * t):
            for k in range(1, 2 * t):
                assert not quadrinomial_hypothesis(s, k, t)
    with pytest.raises(HypothesisNotMet):
        quadrinomial_aut_expected(1, 3, 2, 3)


def test_quadrinomial_even_order():
    d = quadrinomial_aut_expected(1, 3, 7, 2)
    assert d.order == 2**7 * (2**1 - 1)
    d = quadrinomial_aut_expected(1, 5, 7, 4)
    assert d.order == 4**7 * (4**1 - 1)
    d = quadrinomial_aut_expected(1, 3, 7, 3)
    assert d.order == 3**1 - 1


def test_quadrinomial_containment_q2():
    F = tower_field(2, 7, 2)
    d = quadrinomial_aut_expected(1, 3, 7, 2)
    f = expected_polynomial(d, F)
    assert f == quadrinomial(F, 1, 3, 7)
    res = check_expected_group(f, d)
    assert res["containment"] and res["equality"] is None
    (a, b), (c, dd) = d.members(F)[-1]
    assert not aut_group_contains(f, [((a, F.add(b, F.generator)), (c, dd))])


@pytest.mark.slow
def test_quadrinomial_containment_q3():
    F = tower_field(3, 7, 2)
    d = quadrinomial_aut_expected(1, 3, 7, 3)
    assert check_expected_group(expected_polynomial(d, F), d)["containment"]


def test_lz2_hypothesis():
    assert lz2_hypothesis(1, 5, 3) and not lz2_hypothesis(1, 4, 3)
    assert not lz2_hypothesis(1, 5, 2)
    assert lz2_hypothesis(3, 7, 3) and not lz2_hypothesis(3, 6, 3)
    with pytest.raises(HypothesisNotMet):
        lz2_aut_expected(1, 5, 4)


def test_lz2_odd_order_formula():
    d = lz2_aut_expected(1, 5, 3)
    assert d.order == 4
    assert lz2_aut_expected(1, 5, 5).order == 4 + 4 * 5
    assert lz2_aut_expected(1, 6, 3).order == 8


def test_lz2_containment_t5():
    F = tower_field(3, 5, 2)
    d = lz2_aut_expected(1, 5, 3)
    f = expected_polynomial(d, F)
    assert f == lz2_quadrinomial(F, 1, 5)
    assert len(d.members(F)) == 4
    assert check_expected_group(f, d)["containment"]


@pytest.mark.slow
def test_lz2_containment_t6():
    F = tower_field(3, 6, 2)
    d = lz2_aut_expected(1, 6, 3)
    assert check_expected_group(expected_polynomial(d, F), d)["containment"]
