import random

import pytest
from hypothesis import given, settings, strategies as st

from ordforge import ord_core as C
from ordforge.ord_core import EQ, GT, LT, NotationError, TermClass
from ordforge.sampling import random_ord

import oracles

P = C.parse_term
ONE, OMEGA, EPS0 = C.ONE, C.OMEGA, C.veblen(C.ONE, C.ZERO)

terms = st.randoms(use_true_random=False).map(lambda r: random_ord(r, 3))


def test_parse_render_sugar():
    assert C.render(P("0")) == "0"
    assert C.render(ONE) == "phi(0,0)"
    assert C.render(ONE, sugar=True) == "1"
    assert C.render(C.gamma(2), sugar=True) == "phi(phi(1,0),0)"
    for s in ["w^w", "phi(1,0) + 1", "eps0 + w", "phi(w,2) + 3"]:
        a = P(s)
        assert P(C.render(a)) is a
        assert P(C.render(a, sugar=True)) is a
    assert P(" w + 1 ") is P("w + 1")


def test_parse_rejects_garbage():
    for s in ["phi((", "phi(0)", "", "  ", "w^", "1 +"]:
        with pytest.raises(NotationError):
            P(s)


def test_compare_examples():
    assert C.compare(C.ZERO, ONE) is LT
    assert C.compare(C.omega_pow(OMEGA), EPS0) is LT
    assert C.compare(C.veblen(C.ZERO, EPS0), EPS0) is EQ
    assert C.veblen(C.ZERO, EPS0) is EPS0
    assert C.compare(P("w + 1"), P("w")) is GT


def test_add_absorbs():
    assert C.add(ONE, OMEGA) is OMEGA
    assert C.add(OMEGA, ONE) is P("w + 1")
    assert C.add(P("w + 3"), P("w^2")) is P("w^2")


def test_mul_and_wpow():
    assert C.mul(P("w + 1"), OMEGA) is P("w^2")
    assert C.mul(OMEGA, P("2")) is P("w + w")
    assert C.mul(P("3"), P("4")) is P("12")
    assert C.omega_pow(C.ZERO) is ONE
    assert C.omega_pow(EPS0) is EPS0


def test_classify():
    assert C.classify(C.ZERO) is TermClass.ZERO
    assert C.classify(ONE) is TermClass.SUCCESSOR
    assert C.classify(OMEGA) is TermClass.LIMIT
    assert C.classify(P("eps0 + 2")) is TermClass.SUCCESSOR


def test_fund_seq_examples():
    for n in range(5):
        assert C.fund_seq(OMEGA, n) is C.nat(n + 1)
    assert C.fund_seq(EPS0, 0) is OMEGA
    assert C.fund_seq(EPS0, 1) is P("w^w")
    with pytest.raises(NotationError):
        C.fund_seq(ONE, 0)
    with pytest.raises(NotationError):
        C.fund_seq(C.ZERO, 0)


def test_gamma():
    assert C.gamma(0) is ONE
    assert C.gamma(1) is EPS0
    assert C.gamma(2) is C.veblen(EPS0, C.ZERO)
    for n in range(6):
        assert C.compare(C.gamma(n), C.gamma(n + 1)) is LT


def test_codes_pinned():
    assert C.encode_nat(C.ZERO) == 0 and C.decode_nat(0) is C.ZERO
    assert C.decode_nat(1) is ONE
    xs = [C.decode_nat(i) for i in range(3000)]
    assert len(set(map(id, xs))) == 3000
    assert all(C.encode_nat(x) == i for i, x in enumerate(xs))
    # 0 and 1 are the two least elements
    assert all(C.compare(ONE, x) is not GT for x in xs[1:])


def test_oracle_agreement_prefix():
    xs = [C.decode_nat(i) for i in range(300)]
    ts = [oracles.as_tuple(x) for x in xs]
    for a, ta in zip(xs, ts):
        for b, tb in zip(xs, ts):
            assert C.compare(a, b).value == oracles.oracle_cmp(ta, tb)


@settings(max_examples=300, deadline=None)
@given(terms, terms)
def test_trichotomy(a, b):
    c = C.compare(a, b)
    assert C.compare(b, a).value == -c.value
    assert (c is EQ) == (a is b)


@settings(max_examples=300, deadline=None)
@given(terms, terms, terms)
def test_transitivity_and_add(a, b, c):
    if C.compare(a, b) is LT and C.compare(b, c) is LT:
        assert C.compare(a, c) is LT
    assert C.add(C.add(a, b), c) is C.add(a, C.add(b, c))
    if C.compare(b, c) is LT:
        assert C.compare(C.add(a, b), C.add(a, c)) is LT


@settings(max_examples=300, deadline=None)
@given(terms, terms, terms)
def test_fixed_point_law(x, y, m):
    lo, hi = (x, y) if C.compare(x, y) is LT else (y, x)
    if lo is hi:
        return
    v = C.veblen(hi, m)
    assert C.veblen(lo, v) is v


@settings(max_examples=200, deadline=None)
@given(terms, terms, terms)
def test_closure(a, b, c):
    for r in (C.add(a, b), C.mul(a, b), C.omega_pow(a), C.veblen(a, b)):
        assert C.is_normal(r)
    if C.compare(b, c) is LT:
        assert C.compare(C.veblen(a, b), C.veblen(a, c)) is LT


@settings(max_examples=200, deadline=None)
@given(terms)
def test_fund_seq_properties(a):
    if C.classify(a) is not TermClass.LIMIT:
        return
    seq = [C.fund_seq(a, n) for n in range(5)]
    assert all(C.compare(x, a) is LT for x in seq)
    assert all(C.compare(x, y) is LT for x, y in zip(seq, seq[1:]))
    # cofinality against smaller subterms
    for b in C.subterms(a):
        if C.compare(b, a) is LT:
            assert any(C.compare(b, C.fund_seq(a, n)) is LT for n in range(12))


def test_fund_seq_cofinal_fixed():
    rng = random.Random(3)
    for _ in range(200):
        a = random_ord(rng, 3)
        if C.classify(a) is TermClass.LIMIT:
            assert C.compare(C.fund_seq(a, 0), a) is LT
