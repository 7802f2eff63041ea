import random

import pytest

from ordforge.formula import encode, parse_formula as F
from ordforge.formula.sexpr import SexprError
from ordforge.formula.syntax import BOT, Imp, Num, Rel
from ordforge.proof_kernel import (
    Builder, Gated, Hyp, NonLogicalAxiom, ProofError, ProofNode, build_reflection, build_truth_intro,
    check, from_text, gated_node, prove_acc_zero, sample_proof, to_text,
)
from ordforge.theory_gen.theories import iterate, tarski, tarski_ordered, z1i

import oracles

Z = z1i()
T = tarski(Z)


def test_modus_ponens():
    b = Builder(Z)
    p1 = b.axiom(Z.axiom_formula(0))
    a = p1.conclusion
    p = b.mp(p1, b.lax(Imp(a, Imp(BOT, a))))
    assert check(p, Z).ok
    assert oracles.recheck(p, Z)
    with pytest.raises(ProofError):
        b.mp(p1, p1)


def test_tampered_root_rejected():
    b = Builder(Z)
    p1 = b.axiom(Z.axiom_formula(0))
    bad = ProofNode(F("(= 0 1)"), p1.rule)
    v = check(bad, Z)
    assert not v.ok and v.path == ()
    assert not check(ProofNode(p1.conclusion, Hyp()), Z).ok


def test_failure_path_points_at_child():
    b = Builder(Z)
    p1 = b.axiom(Z.axiom_formula(0))
    p = b.mp(p1, b.lax(Imp(p1.conclusion, Imp(BOT, p1.conclusion))))
    bad_leaf = ProofNode(p1.conclusion, NonLogicalAxiom(3))
    v = check(ProofNode(p.conclusion, p.rule, (bad_leaf, p.children[1])), Z)
    assert not v.ok and v.path == (0,)


def test_gated_rule():
    g = tarski_ordered(Z)
    gate = prove_acc_zero(g)
    assert check(gate, g).ok
    node = gated_node(g, gate, 0, 2)
    assert check(node, g).ok
    wrong_a = ProofNode(node.conclusion, Gated(1, node.rule.family, node.rule.index), node.children)
    assert check(wrong_a, g).reason == "gate mismatch"
    wrong_fam = ProofNode(node.conclusion, Gated(0, "G1", node.rule.index), node.children)
    assert not check(wrong_fam, g).ok
    # the Acc atom of another theory does not open the gate
    fake = ProofNode(Rel(iterate(Z, 2).acc_symbol(), Num(0)), gate.rule, gate.children)
    assert not check(ProofNode(node.conclusion, node.rule, (fake,)), g).ok


def test_truth_intro():
    rng = random.Random(4)
    for _ in range(10):
        sp = sample_proof(Z, rng)
        tp = build_truth_intro(sp, Z)
        assert check(tp, T).ok
        assert oracles.recheck(tp, T)
        assert tp.conclusion is Rel(T.T, Num(encode(sp.conclusion)))
        assert not check(tp, Z).ok


def test_truth_intro_rejects_bad_input():
    with pytest.raises(ProofError):
        build_truth_intro(ProofNode(F("(= 0 1)"), NonLogicalAxiom(0)), Z)


def test_reflection():
    for s in ["(= v1 v1)", "(all 2 (= (+ v2 0) v2))", "(imp (= v1 0) (= v3 v1))"]:
        p = build_reflection(Z, F(s))
        assert check(p, T).ok
        assert oracles.recheck(p, T)


def test_reflection_excludes_free_set_vars():
    with pytest.raises(ProofError):
        build_reflection(Z, F("(in 0 1)"))
    with pytest.raises(ProofError):
        build_reflection(Z, F("(T@1 0)"))


def test_text_roundtrip():
    p = build_truth_intro(sample_proof(Z, random.Random(8)), Z)
    name, q = from_text(to_text(p, T.name))
    assert name == T.name
    assert check(q, T).ok
    assert to_text(q, T.name) == to_text(p, T.name)
    with pytest.raises(SexprError):
        from_text("(proof z1i (axiom x (= 0 0)))")
    with pytest.raises(SexprError):
        from_text("(theorem z1i)")


def test_mutations_mostly_rejected():
    rng = random.Random(9)
    ps = [build_truth_intro(sample_proof(Z, rng), Z) for _ in range(20)]
    rejected = 0
    for i in range(300):
        q, _, _ = oracles.mutate(ps[i % 20], rng)
        if not check(q, T).ok:
            rejected += 1
        else:
            assert oracles.recheck(q, T)
    assert rejected >= 0.95 * 300
