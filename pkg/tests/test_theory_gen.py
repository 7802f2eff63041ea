import pytest

from ordforge.formula import decode, encode, parse_formula as F
from ordforge.formula.syntax import ExS
from ordforge.proof_kernel import check, gated_node, prove_acc_zero
from ordforge.theory_gen.families import induction_instance
from ordforge.theory_gen.theories import (
    UnionTheory, gated_instances, is_axiom, iterate, omega_union, tarski, tarski_kk, tarski_lambda,
    tarski_ordered, theory, z1i,
)

PEANO = ["P1", "P2", "P3", "P4", "P5", "P6"]


def test_z1i_families():
    z = z1i()
    assert [f.name for f in z.families] == PEANO + ["Ind"]
    assert is_axiom(z, z.ax(1))
    ind = induction_instance(1, F("(= v1 v1)"))
    assert is_axiom(z, encode(ind))
    assert not is_axiom(z, encode(F("(= 0 1)")))
    assert not is_axiom(z, 1)


def test_z1i_prefix_in_language():
    z = z1i()
    for i in range(500):
        n = z.ax(i)
        assert is_axiom(z, n)
        assert z.in_language(decode(n))


def test_tarski_truth_axiom():
    z, t = z1i(), tarski(z1i())
    eq = F("(= 0 0)")
    tax = F(f"(iff (= 0 0) (T@1 {encode(eq)}))")
    assert t.match_axiom(tax)[0] == "TSchema"
    assert not is_axiom(z, encode(tax))
    assert not z.in_language(tax)
    names = [f.name for f in t.families]
    assert names[:7] == PEANO + ["Ind"]
    assert {"TAx", "TDed", "TOmega", "D1", "D6"} <= set(names)


def test_base_axioms_reappear():
    z, t = z1i(), tarski(z1i())
    base = {z.ax(i) for i in range(50)}
    above = {t.ax(i) for i in range(2000)}
    assert base & above
    assert all(is_axiom(t, n) for n in base)


def test_ordered_gated_split():
    g = tarski_ordered(z1i())
    names = [f.name for f in g.families]
    assert "ProgAcc" in names and "Least" in names
    assert not any(n.startswith("T") for n in names)
    assert [f.name for f in g.gated_families(2)] == ["G1", "G2", "G3", "G4", "G5"]
    ungated = {g.ax(i) for i in range(1000)}
    for i in range(20):
        n = gated_instances(g, 2, i)
        assert n == encode(g.gated_formula(2, i))
        assert n not in ungated
        assert g.match_gated(2, decode(n)) is not None


def test_iterates():
    z = z1i()
    assert iterate(z, 0) is z
    assert iterate(z, 1) is tarski_ordered(z)
    t2 = iterate(z, 2)
    assert t2.base is iterate(z, 1)
    assert t2.acc_symbol() is not iterate(z, 1).acc_symbol()
    u = omega_union(z)
    assert isinstance(u, UnionTheory)
    assert theory("tarski^1(z1i)") is tarski(z)


def test_iterate_inherits_lower_gated_rules():
    t1, t2 = iterate(z1i(), 1), iterate(z1i(), 2)
    g1, g2 = prove_acc_zero(t1), prove_acc_zero(t2)
    assert check(g1, t2).ok and check(g2, t2).ok
    assert check(gated_node(t2, g1, 0, 3), t2).ok
    assert check(gated_node(t2, g2, 0, 3), t2).ok
    assert not check(gated_node(t2, g2, 0, 3), t1).ok


def test_kk_and_lambda_families():
    kk, lm = tarski_kk(z1i()), tarski_lambda(z1i())
    assert {"K0", "K1", "Least"} <= {f.name for f in kk.families}
    assert {"L0", "L1", "Lk", "Least"} <= {f.name for f in lm.families}
    for th in (kk, lm):
        for i in range(300):
            assert is_axiom(th, th.ax(i))


def test_unknown_theory_name():
    with pytest.raises(ValueError):
        theory("peano")


def test_no_comprehension_in_z1i_prefix():
    z = z1i()
    assert not any(isinstance(decode(z.ax(i)), ExS) for i in range(500))
