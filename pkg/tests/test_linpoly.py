import itertools
import random

import pytest

from oracles import brute_kernel_size, naive_of, poly_values
from partscat.errors import BaseMismatch, NotInvertible, ParseError, ZeroPolynomial, ZeroRho
from partscat.gf import FElem, tower_field
from partscat.linpoly import (
    LinPoly,
    adjoint,
    compose,
    dickson_matrix,
    f_rho,
    format_poly,
    inverse,
    is_invertible,
    kernel_basis,
    kernel_dim,
    kernel_elements,
    normalize,
    parse_poly,
)
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


def binomials(F, i, j):
    for a in range(F.order):
        for b in range(F.order):
            yield LinPoly.from_terms(F, {i: a, j: b})


def rand_poly(F, rng):
    return LinPoly(F, [rng.randrange(F.order) for _ in range(F.n)])


def test_eval_examples(F4, F16):
    f = LinPoly.monomial(F4, 1)
    g = F4.generator
    assert f(FElem(F4, g)) == FElem(F4, g) + 1
    assert f.eval_raw(0) == 0
    h = LinPoly.from_terms(F16, {0: 1, 2: 1})
    assert h.eval_raw(F16.exp(5)) == 0


def test_eval_matches_schoolbook(F16):
    K = naive_of(F16)
    rng = random.Random(3)
    for _ in range(20):
        f = rand_poly(F16, rng)
        vals = poly_values(K, f.coeffs, F16.q)
        for x in range(F16.order):
            assert f.eval_raw(x) == vals[x]
        for k, v in enumerate(f.values()):
            assert v == vals[F16.exp(k)]


@pytest.mark.parametrize("q,t,tp", [(2, 2, 2), (2, 3, 2), (4, 1, 3)])
def test_additivity_and_homogeneity(q, t, tp):
    F = tower_field(q, t, tp)
    rng = random.Random(0)
    f = rand_poly(F, rng)
    for x in range(F.order):
        for y in range(0, F.order, 7):
            assert f.eval_raw(F.add(x, y)) == F.add(f.eval_raw(x), f.eval_raw(y))
        for c in F.subfield_elements(1):
            assert f.eval_raw(F.mul(c, x)) == F.mul(c, f.eval_raw(x))


def test_compose_examples(F16):
    f = LinPoly.from_terms(F16, {1: 3, 3: 7})
    assert compose(f, LinPoly.identity(F16)) == f
    assert compose(LinPoly.monomial(F16, 3), LinPoly.monomial(F16, 2)) == LinPoly.monomial(F16, 1)
    alpha = F16.generator
    ga = LinPoly.from_terms(F16, {0: alpha, 2: 1})
    assert compose(ga, LinPoly.monomial(F16, 1)) == LinPoly.from_terms(F16, {1: alpha, 3: 1})


def test_compose_coherent_exhaustive(F16):
    rng = random.Random(5)
    for _ in range(30):
        f, h = rand_poly(F16, rng), rand_poly(F16, rng)
        fh = compose(f, h)
        for x in range(F16.order):
            assert fh.eval_raw(x) == f.eval_raw(h.eval_raw(x))


def test_compose_associative(F64):
    rng = random.Random(6)
    for _ in range(20):
        a, b, c = (rand_poly(F64, rng) for _ in range(3))
        assert compose(compose(a, b), c) == compose(a, compose(b, c))


def _tr(F, a):
    return F.trace(a, F.n, 1)


def test_adjoint_identity_exhaustive(F16):
    rng = random.Random(7)
    for _ in range(10):
        f = rand_poly(F16, rng)
        fh = adjoint(f)
        assert adjoint(fh) == f
        for y in range(F16.order):
            for z in range(F16.order):
                assert _tr(F16, F16.mul(y, f.eval_raw(z))) == _tr(F16, F16.mul(z, fh.eval_raw(y)))
    assert adjoint(LinPoly.identity(F16)) == LinPoly.identity(F16)


def test_adjoint_of_form11_shape(F64):
    t, s = 3, 1
    f = LinPoly.from_terms(F64, {s: 5, t + s: 9})
    assert {i % t for i in adjoint(f).support} == {t - s}


def test_f_rho(F16):
    f = LinPoly.from_terms(F16, {1: 3, 2: 5, 3: 7})
    for rho in F16.subfield_nonzero(1):
        assert f_rho(f, rho).is_zero()
    rho = F16.generator
    mono = LinPoly.monomial(F16, 2)
    assert f_rho(mono, rho) == LinPoly.monomial(F16, 2, F16.sub(F16.frob(rho, 2), rho))
    assert f_rho(LinPoly.identity(F16), rho).is_zero()
    with pytest.raises(ZeroRho):
        f_rho(f, 0)
    for r in F16.nonzero():
        fr = f_rho(f, r)
        for x in range(F16.order):
            assert fr.eval_raw(x) == F16.sub(f.eval_raw(F16.mul(r, x)), F16.mul(r, f.eval_raw(x)))


def test_dickson_examples(F64):
    I = dickson_matrix(LinPoly.identity(F64))
    assert I == [[1 if i == j else 0 for j in range(6)] for i in range(6)]
    F = tower_field(2, 2, 3)
    a, b = F.exp(3), F.exp(10)
    f = LinPoly.from_terms(F, {0: a, 2: b, 4: 1}, base_exp=2)
    D = dickson_matrix(f, 2)
    fr = lambda x, i: F.frob(x, 2 * i)
    assert D == [[a, b, 1], [1, fr(a, 1), fr(b, 1)], [fr(b, 2), 1, fr(a, 2)]]
    P = dickson_matrix(LinPoly.from_terms(F, {2: 1}, base_exp=2), 2)
    assert F.det(P) == 1
    with pytest.raises(BaseMismatch):
        dickson_matrix(LinPoly.monomial(F, 1), 2)


def test_invertible_examples(F4, F16):
    assert is_invertible(LinPoly.monomial(F16, 1))
    assert not is_invertible(LinPoly.from_terms(F4, {0: 1, 1: 1}))
    f = LinPoly.from_terms(F16, {0: F16.generator, 2: 1})
    assert is_invertible(f)
    assert brute_kernel_size(naive_of(F16), f.coeffs, 2) == 1


@pytest.mark.parametrize("F_args,pairs", [((2, 2, 2), [(0, 1), (0, 2), (1, 3), (1, 2)]), ((3, 1, 2), [(0, 1)])])
def test_invertible_iff_trivial_kernel(F_args, pairs):
    F = tower_field(*F_args)
    K = naive_of(F)
    for i, j in pairs:
        for f in binomials(F, i, j):
            if f.is_zero():
                continue
            size = brute_kernel_size(K, f.coeffs, F.q)
            kd = kernel_dim(f)
            assert F.q**kd == size
            assert is_invertible(f) == (size == 1)
            assert len(kernel_elements(f)) == size
            assert all(f.eval_raw(x) == 0 for x in kernel_elements(f))


def test_invertible_random_f64(F64):
    rng = random.Random(9)
    for _ in range(200):
        f = rand_poly(F64, rng)
        if f.is_zero():
            continue
        assert is_invertible(f) == (kernel_dim(f) == 0)


def test_kernel_dim_examples(F64):
    assert kernel_dim(LinPoly.identity(F64)) == 0
    assert kernel_dim(LinPoly.from_terms(F64, {0: 1, 1: 1})) == 1
    trace = LinPoly(F64, [1] * F64.n)
    assert kernel_dim(trace) == F64.n - 1
    assert len(kernel_basis(trace)) == F64.d - 1


def test_inverse(F16):
    rng = random.Random(11)
    done = 0
    while done < 20:
        f = rand_poly(F16, rng)
        if f.is_zero() or not is_invertible(f):
            continue
        g = inverse(f)
        assert compose(g, f) == LinPoly.identity(F16)
        assert compose(f, g) == LinPoly.identity(F16)
        done += 1
    with pytest.raises(NotInvertible):
        inverse(LinPoly.from_terms(F16, {0: 1, 2: 1}))


def test_normalize_examples(F16):
    c = F16.exp(7)
    assert normalize(LinPoly.monomial(F16, 3, c), 0) == (LinPoly.monomial(F16, 3), 0)
    f = LinPoly.from_terms(F16, {0: 1, 2: F16.exp(3)})
    g, ell = normalize(f, 1)
    assert ell == 1 and g == f.scale(F16.inv(F16.exp(3)))
    g, ell = normalize(LinPoly.from_terms(F16, {1: 1, 3: 1}), 2)
    assert (g, ell) == (LinPoly.from_terms(F16, {0: 1, 2: 1}), 1)
    with pytest.raises(ZeroPolynomial):
        normalize(LinPoly.zero(F16), 0)


def test_normalize_preserves_L_status(F16):
    for i, j in itertools.combinations(range(4), 2):
        for f in binomials(F16, i, j):
            for ell in range(4):
                try:
                    g, ell2 = normalize(f, ell)
                except ZeroPolynomial:
                    continue
                assert g.coeffs[g.q_degree] == 1 and g.coeffs[ell2] == 0
                before = oracle(f, "L", 2, ell).holds
                assert oracle(g, "L", 2, ell2).holds == before


def test_base_exp_validation(F16):
    with pytest.raises(BaseMismatch):
        LinPoly.from_terms(F16, {1: 1}, base_exp=2)


def test_text_round_trip(F16):
    f = parse_poly(F16, "1:g^3,3:g^0")
    assert f == LinPoly.from_terms(F16, {1: F16.exp(3), 3: 1})
    assert format_poly(f) == "1:g^3,3:g^0"
    assert str(LinPoly.zero(F16)) == "0"
    with pytest.raises(ParseError):
        parse_poly(F16, "7:g")
    with pytest.raises(ParseError):
        parse_poly(F16, "x")
