import random

import pytest
from hypothesis import given, settings, strategies as st

from ordforge.formula import decode, encode, is_formula_code, parse_formula, pretty, to_sexpr
from ordforge.formula.godel import numbering_table
from ordforge.formula.schemata import (
    Lam, build_j, build_jk, build_lemma_schemata, build_nos, build_prog, build_ti, hole_lam, mem_lam,
)
from ordforge.formula.sexpr import SexprError
from ordforge.formula.syntax import (
    BOT, All, Eq, Mem, Num, Rel, RelSym, Var, free_set_vars, has_holes, normalize,
)
from ordforge.formula.syntaxfns import bicond_h, bounded_bd, close_g, readable_rd, subst_f
from ordforge.pairing import pair, pair2, pair_list, proj, unpair, unpair2, unpair_list
from ordforge.systems import G0
from ordforge import ord_core

import oracles

F = parse_formula
formulas = st.randoms(use_true_random=False).map(lambda r: oracles.random_formula(r, 4))


# ---------------------------------------------------------------------------
# pairing

def test_pairing_laws():
    assert proj(1, pair([4, 5, 6])) == 4
    assert proj(3, pair([4, 5, 6])) == 6
    seen = {pair2(x, y) for x in range(100) for y in range(100)}
    assert len(seen) == 10_000
    assert all(pair2(*unpair2(n)) == n for n in range(10_000))
    assert pair([5, 6]) != pair([5, 6, 0])
    assert unpair(pair([1, 2, 3, 4]), 4) == (1, 2, 3, 4)
    assert unpair_list(pair_list([3, 0, 9])) == (3, 0, 9)
    with pytest.raises(ValueError):
        proj(4, 0, 3)


# ---------------------------------------------------------------------------
# numbering

def test_encode_decode_examples():
    f = F("(= 0 0)")
    assert decode(encode(f)) is f
    assert decode(0) is BOT
    assert decode(1) is None and not is_formula_code(1)
    assert numbering_table()[0][:2] == ("term", "v_i")


def test_sexpr_errors():
    for s in ["(= 0", "(foo 1 2)", "(all x (= 0 0))", ")"]:
        with pytest.raises(SexprError):
            F(s)


@settings(max_examples=400, deadline=None)
@given(formulas)
def test_roundtrip_and_injective(f):
    n = encode(f)
    assert decode(n) is f
    assert F(to_sexpr(f)) is f


def test_encode_injective_sample():
    rng = random.Random(2)
    fs = {oracles.random_formula(rng, 4) for _ in range(3000)}
    assert len({encode(f) for f in fs}) == len(fs)


# ---------------------------------------------------------------------------
# f, g, h, Rd, Bd

def test_f_g_examples():
    n = encode(F("(= v1 0)"))
    assert subst_f(n, 1, 3) == encode(F("(= 3 0)"))
    bound = encode(F("(all 1 (= v1 0))"))
    assert subst_f(bound, 1, 3) == bound
    assert close_g(n, 1) == encode(F("(all 1 (= v1 0))"))
    assert subst_f(1, 0, 0) == 0 and close_g(1, 0) == 0


def test_h_examples():
    a = 4
    zero = F("(= 0 0)")
    h = decode(bicond_h(a, encode(zero)))
    assert h is oracles.oracle_bicond("(= 0 0)", a, 1, encode)
    assert pretty(decode(bicond_h(a, encode(F("(= v1 v1)"))))).startswith("(v1 = v1 <-> T@1[4](<v1 = v1")
    assert bicond_h(a, encode(F("(in 0 1)"))) == 0


@settings(max_examples=500, deadline=None)
@given(formulas, st.integers(0, 4), st.integers(0, 30))
def test_fgh_against_tree_oracle(f, i, k):
    s = to_sexpr(f)
    n = encode(f)
    assert subst_f(n, i, k) == encode(oracles.oracle_subst(s, i, k))
    assert close_g(n, i) == encode(oracles.oracle_close(s, i))
    want = oracles.oracle_bicond(s, 7, 1, encode)
    assert bicond_h(7, n) == (0 if want is None else encode(want))


def test_rd():
    one, two = G0.encode(ord_core.ONE), G0.encode(ord_core.nat(2))
    t_one = Rel(RelSym("TA", 1, Num(one), ""), Num(0))
    assert readable_rd(two, encode(F("(= 0 0)")), system=G0)
    assert readable_rd(two, encode(t_one), system=G0)
    assert not readable_rd(one, encode(t_one), system=G0)
    assert not readable_rd(two, 1, system=G0)
    # monotone in a
    for n in range(200):
        if readable_rd(one, n, system=G0):
            assert readable_rd(two, n, system=G0)


def test_bd():
    assert bounded_bd(encode(F("(= 0 0)")))
    assert not bounded_bd(encode(F("(in 0 1)")))
    assert bounded_bd(encode(F("(allS 1 (in 0 1))")))
    assert not bounded_bd(1)


@settings(max_examples=300, deadline=None)
@given(formulas)
def test_bd_matches_structure(f):
    assert bounded_bd(encode(f)) == (not free_set_vars(f))
    assert bounded_bd(encode(f)) == (not oracles.tree_has_free_set_var(oracles.read_sexpr(to_sexpr(f))))


# ---------------------------------------------------------------------------
# schema builders

def test_prog_ti_shapes():
    x = mem_lam(1)
    p = build_prog(x)
    assert pretty(p) == "forall v1. (forall v2. (prec@g0(v2, v1) -> v2 in X1) -> v1 in X1)"
    ti = build_ti(x, Num(5))
    assert ti.a is p
    assert pretty(ti.b) == "forall v1. (prec@g0(v1, 5) -> v1 in X1)"
    ti_f = build_ti(hole_lam(0), Num(5))
    assert has_holes(ti_f)


def test_j_shapes():
    a = Lam(0, Eq(Var(0), Var(0)))
    j = build_j(a, Num(0))
    assert isinstance(j, All)
    j1 = build_jk(1, Num(1), Num(9), a, Num(2))
    assert "add@lambda(v1, 2)" in pretty(j1)
    # J^2 = (forall x in [1,9))[J^1(A, x) -> J^1(A, x + 2)]
    j2 = build_jk(2, Num(1), Num(9), a, Num(2))
    x = j2.i
    assert j2.a.b.a is build_jk(1, Num(1), Num(9), a, Var(x))
    with pytest.raises(ValueError):
        build_jk(0, Num(1), Num(9), a, Num(2))


def test_nos_and_lemma_schemata_roundtrip():
    nos = build_nos(Lam(0, Mem(Var(0), 1)))
    assert pretty(nos).startswith("(forall v1. (v1 in X1 | ~v1 in X1)")
    for f in [nos, build_lemma_schemata(1, Num(3), Num(2), Num(1)), build_lemma_schemata(1, Num(3)),
              build_lemma_schemata(1, Num(0), Num(25), Num(1), system="kk"),
              build_lemma_schemata(1, Num(0), system="kk")]:
        assert decode(encode(f)) is f
        assert not has_holes(f)
        assert normalize(f) is not None
