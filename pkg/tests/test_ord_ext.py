import random

import pytest
from hypothesis import given, settings, strategies as st

from ordforge import ord_core, ord_ext as E
from ordforge.ord_core import EQ, LT, NotationError
from ordforge.sampling import random_coeff, random_ext, random_ord

import oracles

K, L = E.KAPPA, E.LAMBDA
c = E.parse_coeff


def k(text):
    return E.parse_ext(text, K)


def lam(text):
    return E.parse_ext(text, L)


coeffs = st.randoms(use_true_random=False).map(lambda r: random_coeff(r, 3))
kterms = st.randoms(use_true_random=False).map(lambda r: random_ext(r, K, 3))
lterms = st.randoms(use_true_random=False).map(lambda r: random_ext(r, L, 3))


def test_fv_veblen_examples():
    b = c("w + 1")
    assert E.fv_veblen([b]) is E.from_ord(ord_core.omega_pow(ord_core.parse_term("w + 1")))
    assert E.fv_veblen([E.CONE, E.CZERO]) is E.from_ord(ord_core.gamma(1))
    assert E.fv_veblen([E.CONE, E.CZERO, E.CZERO]) is E.delta(1)
    # leading zeros drop out
    assert E.fv_veblen([E.CZERO, E.CONE, E.CZERO]) is E.fv_veblen([E.CONE, E.CZERO])


def test_fv_compare_examples():
    assert E.fv_compare(E.CZERO, E.fv_veblen([E.CONE])) is LT
    assert E.fv_compare(c("phi(1,0)"), c("fv(1,0,0)")) is LT
    a = c("fv(1,w,0) + 3")
    assert E.fv_compare(a, a) is EQ
    # Gamma_0 is a fixed point of every binary phi below it
    g0 = c("fv(1,0,0)")
    assert E.fv_veblen([c("phi(1,0)"), g0]) is g0


def test_fv_compare_agrees_with_binary():
    rng = random.Random(5)
    for _ in range(2000):
        a, b = random_ord(rng, 3), random_ord(rng, 3)
        assert E.fv_compare(E.from_ord(a), E.from_ord(b)) is ord_core.compare(a, b)


def test_normalize_examples():
    assert E.ext_normalize([(E.CZERO, E.CONE)], K) is E.ext_one(K)
    a = k("k^2 + k")
    assert E.ext_add(a, E.ext_zero(K)) is a
    two = E.ext_normalize([(E.CONE, E.cnat(2))], K)
    assert two.summands() == [(E.CONE, E.CONE), (E.CONE, E.CONE)]
    assert E.check_side_conditions(two)


def test_h_of():
    a = k("k^w")
    assert E.h_of(a) is E.ext_zero(K)
    assert E.h_of(E.ext_add(a, E.ext_one(K))) is a
    with pytest.raises(NotationError):
        E.h_of(E.ext_zero(K))


def test_type_of():
    assert E.type_of(E.ext_zero(K)).k == 0
    assert E.type_of(k("k^(w+1)")).k == 1
    assert E.type_of(k("k^w")).k == 0
    assert E.type_of(k("k^2*w")).k == 0
    assert E.type_of(lam("l")).k == 1
    for n in range(4):
        e = E.ext_monomial(E.LEXP, n, E.CONE)
        assert E.type_of(E.ext_monomial(L, e, E.CONE)).k == n + 1


def test_canonical_cases():
    assert E.canonical_seq(E.ext_zero(K)).case == "Empty"
    a = k("k^w + 1")
    f = E.canonical_seq(a)
    assert f.case == "Finite" and f.elements == (E.h_of(a),)
    f = E.canonical_seq(k("k^(w+1)"))
    assert f.case == "ExpSuccessor" and f.stride is c("w")
    assert E.sample_canonical(f, c("3")) is k("k^w*3")
    assert E.canonical_seq(k("k^w")).case == "ExpLimit"
    assert E.canonical_seq(k("k*w")).case == "CoeffLimit"
    with pytest.raises(NotationError):
        E.sample_canonical(E.canonical_seq(E.ext_zero(K)))


def test_lambda_types_in_canonical():
    assert E.canonical_seq(lam("l")).case == "LambdaType(1)"
    assert E.canonical_seq(lam("l^(l^2)")).case == "LambdaType(3)"


def test_kappa_omega_pow_examples():
    assert E.kappa_omega_pow(E.CZERO) is E.ext_one(K)
    assert E.kappa_omega_pow(c("w")) is k("k^w")
    assert E.kappa_omega_pow(c("w + 1")) is E.ext_monomial(K, c("w + 1"), E.COMEGA)


def test_kappa_omega_pow_oracle_on_ranks():
    for i in range(300):
        a = E.coeff_unrank(i)
        assert E.kappa_omega_pow(a) is oracles.kappa_omega_unfold(a)


def test_deltas():
    assert E.delta(0) is E.CONE
    assert E.delta(1) is E.fv_veblen([E.CONE, E.CZERO, E.CZERO])
    for kk in range(4):
        assert E.tilde_delta(1, kk) is E.fv_veblen([E.CONE] + [E.CZERO] * (kk + 1))
    ds = [E.delta(n) for n in range(5)]
    assert all(E.fv_compare(x, y) is LT for x, y in zip(ds, ds[1:]))


def test_coeff_rank_roundtrip():
    xs = [E.coeff_unrank(i) for i in range(1000)]
    assert len(set(map(id, xs))) == 1000
    assert all(E.coeff_rank(x) == i for i, x in enumerate(xs))
    assert xs[:5] == [E.CZERO, E.CONE, E.cnat(2), E.COMEGA, c("phi(1,0)")]


@settings(max_examples=300, deadline=None)
@given(coeffs, coeffs, coeffs)
def test_coeff_order(a, b, d):
    x = E.fv_compare(a, b)
    assert E.fv_compare(b, a).value == -x.value
    assert (x is EQ) == (a is b)
    if x is LT and E.fv_compare(b, d) is LT:
        assert E.fv_compare(a, d) is LT
    assert E.is_coeff_normal(E.cadd(a, b))
    assert E.decode_coeff(E.encode_coeff(a)) is a


@settings(max_examples=300, deadline=None)
@given(st.one_of(kterms, lterms))
def test_ext_roundtrips(a):
    assert E.check_side_conditions(a)
    assert E.ext_normalize(E.decompose(a), a.system) is a
    assert E.decode_ext(E.encode_ext(a), a.system) is a
    assert E.parse_ext(E.render_ext(a), a.system) is a


def _indices(f):
    lexp = f.scheme is E.Scheme.EXP_LIMIT and f.base.system != K
    for n in range(5):
        if not lexp:
            yield E.cnat(n)
        else:
            yield E.ext_monomial(E.LEXP, 0, E.cnat(n)) if n else E.ext_zero(E.LEXP)
    yield E.COMEGA if not lexp else E.ext_monomial(E.LEXP, 0, E.COMEGA)


@settings(max_examples=300, deadline=None)
@given(st.one_of(kterms, lterms))
def test_canonical_samples_below_and_increasing(a):
    f = E.canonical_seq(a)
    if f.kind == "empty":
        return
    if f.kind == "finite":
        assert f.elements == (E.h_of(a),)
        return
    xs = [E.sample_canonical(f, g) for g in _indices(f) if E._index_ok(f, g)]
    assert xs
    assert all(E.ext_compare(x, a) is LT for x in xs)
    assert all(E.ext_compare(x, y) is LT for x, y in zip(xs, xs[1:]))


def test_ext_order_laws():
    rng = random.Random(11)
    for _ in range(2000):
        a, b, d = (random_ext(rng, K, 3) for _ in range(3))
        x = E.ext_compare(a, b)
        assert E.ext_compare(b, a).value == -x.value
        assert (x is EQ) == (a is b)
        if x is LT and E.ext_compare(b, d) is LT:
            assert E.ext_compare(a, d) is LT
