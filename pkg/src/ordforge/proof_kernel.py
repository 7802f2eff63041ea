"""Derivation trees for the generated theories, a checker, and proof constructors.

A node's conclusion only has to agree with what its rule licenses up to
evaluation of closed terms (``normalize``), so ``T(ax(7))`` and
``T(<the 7th axiom>)`` are interchangeable.  Hypotheses exist only while
building; ``Builder.deduce`` discharges them and ``check`` rejects leftovers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterable, Union

from .formula.godel import encode
from .formula.sexpr import SexprError, _atom, formula_from_tree, read_sexpr, to_sexpr
from .formula.syntax import (
    BOT, All, AllS, And, Eq, Ex, ExS, Formula, Iff, Imp, Not, Num, Or, Rel, RelSym, Succ, Term, Var,
    free_num_vars, free_set_vars, fresh_var, normalize, quote, subst, term_value,
)
from .pairing import pair, unpair2
from .theory_gen import LOGICAL, LOGICAL_BY_NAME, RULES, Theory, UnionTheory, tarski
from .theory_gen.families import induction_instance
from .theory_gen.theories import definitional_axioms, pis


# ---------------------------------------------------------------------------
# nodes

@dataclass(frozen=True)
class LogicalAxiom:
    schema: str
    param: int


@dataclass(frozen=True)
class NonLogicalAxiom:
    index: int


@dataclass(frozen=True)
class Infer:
    ded: int


@dataclass(frozen=True)
class Gated:
    a: int
    family: str
    index: int


@dataclass(frozen=True)
class Hyp:
    pass


Rule = Union[LogicalAxiom, NonLogicalAxiom, Infer, Gated, Hyp]


@dataclass(frozen=True, eq=False)
class ProofNode:
    conclusion: Formula
    rule: Rule
    children: tuple["ProofNode", ...] = field(default=())

    def size(self) -> int:
        seen: set[int] = set()
        stack = [self]
        while stack:
            n = stack.pop()
            if id(n) not in seen:
                seen.add(id(n))
                stack.extend(n.children)
        return len(seen)


@dataclass(frozen=True)
class Verdict:
    ok: bool
    path: tuple[int, ...] | None = None
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = "/".join(map(str, self.path)) or "root"
        return f"rejected at {where}: {self.reason}"


class ProofError(ValueError):
    pass


def conv_eq(a: Formula, b: Formula) -> bool:
    return a is b or normalize(a) is normalize(b)


# ---------------------------------------------------------------------------
# checking

def _gate_theory(t: Theory, index: int, acc: RelSym | None = None) -> tuple[Theory | None, int]:
    """The level whose gated rules apply; iterates inherit the gated rules of every lower level."""
    if isinstance(t, UnionTheory):
        lvl, j = unpair2(index)
        t, index = t.step(lvl + 1), j
    if acc is None:
        return t, index
    th = t
    while th is not None and th.acc_symbol() is not acc:
        th = th.base
    return th, index


def _licensed(node: ProofNode, t: Theory) -> str | None:
    """None when the node follows from its children, else the reason it does not."""
    c, r, kids = node.conclusion, node.rule, node.children
    if not t.in_language(c):
        return "conclusion outside the language"
    if isinstance(r, Hyp):
        return "undischarged hypothesis"
    if isinstance(r, LogicalAxiom):
        fam = LOGICAL_BY_NAME.get(r.schema)
        if fam is None:
            return f"unknown schema {r.schema!r}"
        f = fam.build(r.param)
        if f is None or not t.in_language(f):
            return f"{r.schema} has no instance {r.param}"
        if kids:
            return "axioms take no premises"
        return None if conv_eq(f, c) else f"not the {r.schema} instance"
    if isinstance(r, NonLogicalAxiom):
        if kids:
            return "axioms take no premises"
        return None if conv_eq(t.axiom_formula(r.index), c) else f"not axiom {r.index}"
    if isinstance(r, Infer):
        a, b, concl = t.ded_triple(r.ded)
        rule, _ = unpair2(r.ded)
        want = (a,) if 0 < rule < len(RULES) and a is b else (a, b)
        if len(kids) != len(want):
            return f"rule needs {len(want)} premises"
        for k, w in zip(kids, want):
            if not conv_eq(k.conclusion, w):
                return "premise does not match the rule"
        return None if conv_eq(concl, c) else "conclusion does not match the rule"
    if isinstance(r, Gated):
        if len(kids) != 1:
            return "gated rule needs one gate proof"
        g = normalize(kids[0].conclusion)
        if not (isinstance(g, Rel) and g.sym.kind == "Acc" and isinstance(g.t, Num) and g.t.n == r.a):
            return "gate mismatch"
        th, j = _gate_theory(t, r.index, g.sym)
        if th is None:
            return "gate mismatch"
        fams = th.gated_families(r.a)
        if fams[j % len(fams)].name != r.family:
            return f"index {r.index} is not in family {r.family}"
        return None if conv_eq(th.gated_formula(r.a, j), c) else "not the gated instance"
    return "unknown rule"


def check(p: ProofNode, t: Theory) -> Verdict:
    """Verify every node; the failure names the first bad node in pre-order."""
    memo: dict[int, Verdict] = {}

    def go(n: ProofNode) -> Verdict:
        # paths in memoized verdicts are relative to the node
        hit = memo.get(id(n))
        if hit is not None:
            return hit
        reason = _licensed(n, t)
        v = Verdict(True) if reason is None else Verdict(False, (), reason)
        if v.ok:
            for i, k in enumerate(n.children):
                sub = go(k)
                if not sub.ok:
                    v = Verdict(False, (i,) + sub.path, sub.reason)
                    break
        memo[id(n)] = v
        return v

    return go(p)


# ---------------------------------------------------------------------------
# building

class Builder:
    """Proof constructors for one theory; hypotheses are discharged by ``deduce``."""

    def __init__(self, t: Theory):
        self.t = t

    # leaves
    def hyp(self, f: Formula) -> ProofNode:
        return ProofNode(f, Hyp())

    def lax(self, f: Formula) -> ProofNode:
        for fam in LOGICAL:
            p = fam.match(f)
            if p is not None:
                return ProofNode(f, LogicalAxiom(fam.name, p))
        raise ProofError(f"not a logical axiom: {f}")

    def axiom(self, f: Formula) -> ProofNode:
        m = self.t.match_axiom(f)
        if m is None:
            raise ProofError(f"not an axiom of {self.t.name}: {f}")
        return ProofNode(f, NonLogicalAxiom(m[1]))

    def any_axiom(self, f: Formula) -> ProofNode:
        try:
            return self.lax(f)
        except ProofError:
            return self.axiom(f)

    def conv(self, p: ProofNode, f: Formula) -> ProofNode:
        if not conv_eq(p.conclusion, f):
            raise ProofError("conversion between formulas that do not evaluate alike")
        return ProofNode(f, p.rule, p.children)

    # rules
    def _infer(self, rule: str, prem: tuple[ProofNode, ...], concl: Formula) -> ProofNode:
        forms = tuple(x.conclusion for x in prem)
        n = self.t.ded_index(rule, forms, concl)
        if n is None:
            raise ProofError(f"{rule} does not apply")
        return ProofNode(concl, Infer(n), prem)

    def mp(self, pa: ProofNode, pab: ProofNode) -> ProofNode:
        ab = pab.conclusion
        if not isinstance(ab, Imp) or not conv_eq(ab.a, pa.conclusion):
            raise ProofError("modus ponens on mismatched premises")
        n = self.t.ded_index("MP", (ab.a, ab), ab.b)
        if n is None:
            raise ProofError("modus ponens outside the language")
        return ProofNode(ab.b, Infer(n), (pa, pab))

    def gen(self, p: ProofNode, i: int) -> ProofNode:
        return self._infer("GenN", (p,), All(i, p.conclusion))

    def gen_s(self, p: ProofNode, j: int) -> ProofNode:
        return self._infer("GenS", (p,), AllS(j, p.conclusion))

    def q_all(self, p: ProofNode, i: int) -> ProofNode:
        c = p.conclusion
        return self._infer("QAllN", (p,), Imp(c.a, All(i, c.b)))

    def q_ex(self, p: ProofNode, i: int) -> ProofNode:
        c = p.conclusion
        return self._infer("QExN", (p,), Imp(Ex(i, c.a), c.b))

    def q_all_s(self, p: ProofNode, j: int) -> ProofNode:
        c = p.conclusion
        return self._infer("QAllS", (p,), Imp(c.a, AllS(j, c.b)))

    def q_ex_s(self, p: ProofNode, j: int) -> ProofNode:
        c = p.conclusion
        return self._infer("QExS", (p,), Imp(ExS(j, c.a), c.b))

    # derived steps
    def all_e(self, p: ProofNode, t: Term) -> ProofNode:
        c = p.conclusion
        if not isinstance(c, All):
            raise ProofError("instantiating a non-universal formula")
        return self.mp(p, self.lax(Imp(c, subst(c.a, c.i, t))))

    def and_i(self, pa: ProofNode, pb: ProofNode) -> ProofNode:
        a, b = pa.conclusion, pb.conclusion
        return self.mp(pb, self.mp(pa, self.lax(Imp(a, Imp(b, And(a, b))))))

    def and_e(self, p: ProofNode, side: int) -> ProofNode:
        c = p.conclusion
        return self.mp(p, self.lax(Imp(c, c.a if side == 0 else c.b)))

    def iff_e(self, p: ProofNode, side: int) -> ProofNode:
        c = p.conclusion
        return self.mp(p, self.lax(Imp(c, Imp(c.a, c.b) if side == 0 else Imp(c.b, c.a))))

    def eq_sub(self, p_eq: ProofNode, body: Formula, i: int, p_s: ProofNode) -> ProofNode:
        """From s = t and body[s/v_i] infer body[t/v_i]."""
        e = p_eq.conclusion
        s, t = e.a, e.b
        ax = self.lax(Imp(e, Imp(subst(body, i, s), subst(body, i, t))))
        return self.mp(p_s, self.mp(p_eq, ax))

    def identity(self, h: Formula) -> ProofNode:
        """h -> h via S, K, K."""
        hh = Imp(h, h)
        s = self.lax(Imp(Imp(h, Imp(hh, h)), Imp(Imp(h, hh), hh)))
        k1 = self.lax(Imp(h, Imp(hh, h)))
        k2 = self.lax(Imp(h, hh))
        return self.mp(k2, self.mp(k1, s))

    def compose(self, pab: ProofNode, pbc: ProofNode) -> ProofNode:
        a = pab.conclusion.a
        h = self.hyp(a)
        return self.deduce(self.mp(self.mp(h, pab), pbc), a)

    # deduction theorem
    def deduce(self, p: ProofNode, h: Formula) -> ProofNode:
        """Turn a proof of C from hypothesis h into a proof of h -> C."""
        memo: dict[int, bool] = {}

        def uses(n: ProofNode) -> bool:
            v = memo.get(id(n))
            if v is None:
                v = (isinstance(n.rule, Hyp) and n.conclusion is h) or any(uses(k) for k in n.children)
                memo[id(n)] = v
            return v

        out: dict[int, ProofNode] = {}

        def go(n: ProofNode) -> ProofNode:
            hit = out.get(id(n))
            if hit is not None:
                return hit
            c = n.conclusion
            if not uses(n):
                res = self.mp(n, self.lax(Imp(c, Imp(h, c))))
            elif isinstance(n.rule, Hyp):
                res = self.identity(h)
            elif isinstance(n.rule, Infer):
                res = self._deduce_infer(n, h, go)
            else:
                raise ProofError("cannot discharge a hypothesis through a gated rule")
            if res.conclusion is not Imp(h, c):
                res = self.conv(res, Imp(h, c))
            out[id(n)] = res
            return res

        return go(p)

    def _deduce_infer(self, n: ProofNode, h: Formula, go) -> ProofNode:
        c = n.conclusion
        rule = RULES[unpair2(n.rule.ded)[0]]
        if rule == "MP":
            pa, pac = n.children
            a = pa.conclusion
            ac = pac.conclusion
            ha, hac = go(pa), go(pac)
            s = self.lax(Imp(Imp(h, ac), Imp(Imp(h, ac.a), Imp(h, ac.b))))
            return self.mp(self.conv(ha, Imp(h, ac.a)), self.mp(hac, s))
        prem = n.children[0]
        hp = go(prem)
        a = prem.conclusion
        if rule in ("GenN", "GenS"):
            i = c.i if rule == "GenN" else c.j
            free = free_num_vars(h) if rule == "GenN" else free_set_vars(h)
            if i in free:
                raise ProofError("generalizing over a variable free in a hypothesis")
            return (self.q_all if rule == "GenN" else self.q_all_s)(hp, i)
        if rule in ("QAllN", "QAllS"):
            # h -> (b -> a)  =>  (h & b) -> a  =>  (h & b) -> Q a  =>  h -> (b -> Q a)
            b, body = a.a, a.b
            un = self.mp(hp, self.lax(Imp(Imp(h, Imp(b, body)), Imp(And(h, b), body))))
            q = c.b
            idx = q.i if rule == "QAllN" else q.j
            qn = (self.q_all if rule == "QAllN" else self.q_all_s)(un, idx)
            return self.mp(qn, self.lax(Imp(Imp(And(h, b), q), Imp(h, Imp(b, q)))))
        # QExN / QExS: h -> (a -> b)  =>  a -> (h -> b)  =>  Q a -> (h -> b)  =>  h -> (Q a -> b)
        body, b = a.a, a.b
        pm = self.mp(hp, self.lax(Imp(Imp(h, Imp(body, b)), Imp(body, Imp(h, b)))))
        q = c.a
        idx = q.i if rule == "QExN" else q.j
        qn = (self.q_ex if rule == "QExN" else self.q_ex_s)(pm, idx)
        return self.mp(qn, self.lax(Imp(Imp(q, Imp(h, b)), Imp(h, Imp(q, b)))))


# ---------------------------------------------------------------------------
# truth introduction: a proof of A in S becomes a proof of T(<A>) in Tarski(S)

def _code(f: Formula) -> Num:
    return Num(encode(f))


def build_truth_intro(sp: ProofNode, s: Theory) -> ProofNode:
    """Map every S-node to a Tarski(S)-proof of the truth of its conclusion."""
    v = check(sp, s)
    if not v.ok:
        raise ProofError(f"input proof does not check in {s.name}: {v}")
    t = tarski(s)
    b = Builder(t)
    tsym = t.T
    tax = b.axiom(All(0, Rel(tsym, s.ax_term(Var(0)))))
    d1, d2, d3 = pis(s.ded_term(Var(0)))
    tded = b.axiom(All(0, Imp(And(Rel(tsym, d1), Rel(tsym, d2)), Rel(tsym, d3))))
    out: dict[int, ProofNode] = {}

    def T(f: Formula) -> Formula:
        return Rel(tsym, _code(f))

    def go(n: ProofNode) -> ProofNode:
        hit = out.get(id(n))
        if hit is not None:
            return hit
        c, r = n.conclusion, n.rule
        if isinstance(r, (LogicalAxiom, NonLogicalAxiom)):
            f = LOGICAL_BY_NAME[r.schema].build(r.param) if isinstance(r, LogicalAxiom) \
                else s.axiom_formula(r.index)
            if f is not c:
                raise ProofError("truth introduction needs exact axiom conclusions")
            k = s.ax_all_index(c)
            res = b.conv(b.all_e(tax, Num(k)), T(c))
        elif isinstance(r, Infer):
            a, bb, concl = s.ded_triple(r.ded)
            if concl is not c or any(k.conclusion is not w for k, w in zip(n.children, (a, bb))):
                raise ProofError("truth introduction needs exact rule instances")
            inst = b.conv(b.all_e(tded, Num(r.ded)), Imp(And(T(a), T(bb)), T(c)))
            ta = go(n.children[0])
            tb = go(n.children[1]) if len(n.children) == 2 else ta
            res = b.mp(b.and_i(ta, tb), inst)
        else:
            raise ProofError("truth introduction covers axioms and rules of S only")
        out[id(n)] = res
        return res

    return go(sp)


# ---------------------------------------------------------------------------
# reflection: (forall n)[Prov(<A(n)>) -> A(n)] in Tarski(S)

def build_reflection(s: Theory, a: Formula) -> ProofNode:
    """Tarski(S) proves Prov_S(<A>) -> A, closed over the free number variables of A."""
    if free_set_vars(a):
        raise ProofError("the reflection schema excludes free set variables")
    if not s.in_language(a):
        raise ProofError(f"formula is not in the language of {s.name}")
    t = tarski(s)
    b = Builder(t)
    tsym = t.T

    def T(x: Term) -> Formula:
        return Rel(tsym, x)

    d_ax = [b.axiom(fam.build(0)) for fam in definitional_axioms(s)]
    tax = b.axiom(All(0, T(s.ax_term(Var(0)))))
    d1, d2, d3 = pis(s.ded_term(Var(0)))
    tded = b.axiom(All(0, Imp(And(T(d1), T(d2)), T(d3))))

    h, p = Var(0), Var(1)
    body = All(1, Imp(s.der_atom(h, p), T(s.cn_term(p))))  # I(h)
    goal_p = T(s.cn_term(p))
    z = 9  # scratch variable for substitution bodies

    # base: I(0)
    der0 = s.der_atom(Num(0), p)
    hyp0 = b.hyp(der0)
    not0 = b.all_e(d_ax[0], p)
    bot = b.mp(hyp0, b.mp(not0, b.lax(Imp(Not(der0), Imp(der0, BOT)))))
    base = b.gen(b.deduce(b.mp(bot, b.lax(Imp(BOT, goal_p))), der0), 1)

    # step: I(h) -> I(Sh)
    ih = b.hyp(body)
    der_s = s.der_atom(Succ(h), p)
    h2 = b.hyp(der_s)
    d3_inst = b.all_e(b.all_e(d_ax[2], h), p)
    disj = b.mp(h2, d3_inst).conclusion
    split = b.mp(h2, d3_inst)
    left, right = disj.a, disj.b

    # leaf case: lf(k) = p -> T(cn p)
    k = Var(2)
    e_leaf = left.a
    he = b.hyp(e_leaf)
    t_axk = b.all_e(tax, k)
    d4k = b.all_e(d_ax[3], k)
    t_cn_lf = b.eq_sub(d4k, T(Var(z)), z, t_axk)
    t_cn_p = b.eq_sub(he, T(s.cn_term(Var(z))), z, t_cn_lf)
    leaf = b.q_ex(b.deduce(t_cn_p, e_leaf), 2)

    # node case
    m, q, r = Var(3), Var(4), Var(5)
    zc = right.a.a.a
    hz = b.hyp(zc)
    parts = []
    cur = hz
    for _ in range(4):
        parts.append(b.and_e(cur, 0))
        cur = b.and_e(cur, 1)
    parts.append(cur)
    eq_nd, der_q, der_r, cn_q, cn_r = parts
    t_q = b.mp(der_q, b.all_e(ih, q))
    t_r = b.mp(der_r, b.all_e(ih, r))
    t_pi1 = b.eq_sub(cn_q, T(Var(z)), z, t_q)
    t_pi2 = b.eq_sub(cn_r, T(Var(z)), z, t_r)
    t_pi3 = b.mp(b.and_i(t_pi1, t_pi2), b.all_e(tded, m))
    d5 = b.all_e(b.all_e(b.all_e(d_ax[4], m), q), r)
    t_cn_nd = b.eq_sub(d5, T(Var(z)), z, t_pi3)
    t_cn_p2 = b.eq_sub(eq_nd, T(s.cn_term(Var(z))), z, t_cn_nd)
    node = b.deduce(t_cn_p2, zc)
    for i in (5, 4, 3):
        node = b.q_ex(node, i)
    ore = b.lax(Imp(Imp(left, goal_p), Imp(Imp(right, goal_p), Imp(Or(left, right), goal_p))))
    goal = b.mp(split, b.mp(node, b.mp(leaf, ore)))
    step_sh = b.gen(b.deduce(goal, der_s), 1)
    step = b.gen(b.deduce(step_sh, body), 0)

    ind = b.axiom(induction_instance(0, body))
    all_i = b.mp(b.and_i(base, step), ind)

    # Prov(x) -> T(x) -> A
    fv = sorted(free_num_vars(a))
    x = quote(a, fv) if fv else _code(a)
    hv = fresh_var(a, body, start=10)
    pv = fresh_var(a, body, Var(hv), start=hv + 1)
    prov = s.prov(x, hv, pv)
    w = prov.a.a
    hw = b.hyp(w)
    i_h = b.all_e(b.all_e(all_i, Var(hv)), Var(pv))
    t_cn = b.mp(b.and_e(hw, 0), i_h)
    t_x = b.eq_sub(b.and_e(hw, 1), T(Var(z)), z, t_cn) if z not in free_num_vars(x) else None
    if t_x is None:
        raise ProofError("scratch variable clash")
    prov_t = b.q_ex(b.q_ex(b.deduce(t_x, w), pv), hv)
    schema = b.axiom(Iff(a, T(x)))
    res = b.compose(prov_t, b.iff_e(schema, 1))
    for i in reversed(fv):
        res = b.gen(res, i)
    return res


# ---------------------------------------------------------------------------
# random proofs, for tests and demos

def sample_proof(t: Theory, rng: random.Random, steps: int = 6) -> ProofNode:
    """A random checked proof built from axioms, modus ponens and generalization."""
    b = Builder(t)
    pool: list[ProofNode] = []
    for _ in range(3):
        idx = rng.randrange(200)
        pool.append(b.axiom(t.axiom_formula(idx)))
    for _ in range(steps):
        move = rng.randrange(4)
        p = rng.choice(pool)
        if move == 0:
            other = rng.choice(pool).conclusion
            pool.append(b.mp(p, b.lax(Imp(p.conclusion, Imp(other, p.conclusion)))))
        elif move == 1:
            pool.append(b.gen(p, rng.randrange(4)))
        elif move == 2:
            q = rng.choice(pool)
            pool.append(b.and_i(p, q))
        else:
            c = p.conclusion
            pool.append(b.mp(p, b.lax(Imp(c, Or(c, BOT)))))
    return pool[-1]


# ---------------------------------------------------------------------------
# text format
#   (proof THEORY NODE)
#   NODE := (logical NAME PARAM F) | (axiom IDX F) | (infer IDX F NODE+)
#         | (gated A FAMILY IDX F NODE) | (hyp F)

def to_text(p: ProofNode, theory_name: str = "") -> str:
    def go(n: ProofNode) -> str:
        r, f = n.rule, to_sexpr(n.conclusion)
        kids = " ".join(go(k) for k in n.children)
        if isinstance(r, LogicalAxiom):
            return f"(logical {r.schema} {r.param} {f})"
        if isinstance(r, NonLogicalAxiom):
            return f"(axiom {r.index} {f})"
        if isinstance(r, Infer):
            return f"(infer {r.ded} {f} {kids})"
        if isinstance(r, Gated):
            return f"(gated {r.a} {r.family} {r.index} {f} {kids})"
        return f"(hyp {f})"

    return f"(proof {_atom(theory_name or '-')} {go(p)})\n"


def _nat(x) -> int:
    if isinstance(x, str) and x.isdigit():
        return int(x)
    raise SexprError(f"expected a natural number, got {x!r}")


def _node(x) -> ProofNode:
    if not isinstance(x, list) or not x:
        raise SexprError("expected a proof node")
    tag = x[0]
    if tag == "logical" and len(x) == 4:
        return ProofNode(formula_from_tree(x[3]), LogicalAxiom(x[1], _nat(x[2])))
    if tag == "axiom" and len(x) == 3:
        return ProofNode(formula_from_tree(x[2]), NonLogicalAxiom(_nat(x[1])))
    if tag == "infer" and len(x) >= 4:
        return ProofNode(formula_from_tree(x[2]), Infer(_nat(x[1])), tuple(_node(k) for k in x[3:]))
    if tag == "gated" and len(x) == 6:
        return ProofNode(formula_from_tree(x[4]), Gated(_nat(x[1]), x[2], _nat(x[3])), (_node(x[5]),))
    if tag == "hyp" and len(x) == 2:
        return ProofNode(formula_from_tree(x[1]), Hyp())
    raise SexprError(f"bad proof node tagged {tag!r}")


def from_text(text: str) -> tuple[str, ProofNode]:
    """(theory name, proof) from the text format; the name is '-' when unset."""
    tree = read_sexpr(text)
    if not (isinstance(tree, list) and len(tree) == 3 and tree[0] == "proof"):
        raise SexprError("expected (proof THEORY NODE)")
    name = tree[1][1] if isinstance(tree[1], tuple) else tree[1]
    return name, _node(tree[2])


# ---------------------------------------------------------------------------
# gated rules

def prove_acc_zero(t: Theory) -> ProofNode:
    """Acc(0) from Prog(Acc) and the least-element axiom of an ordered theory."""
    b = Builder(t)
    acc = t.acc_symbol()
    prog_f = next(f.build(0) for f in reversed(t.families) if f.name == "ProgAcc")
    least = b.axiom(next(f.build(0) for f in t.families if f.name == "Least"))
    inst = b.all_e(b.axiom(prog_f), Num(0))
    below = inst.conclusion.a  # forall c (c < 0 -> Acc c)
    c = below.i
    lt = below.a.a
    h = b.hyp(lt)
    bot = b.mp(h, b.mp(b.all_e(least, Var(c)), b.lax(Imp(Not(lt), Imp(lt, BOT)))))
    acc_c = b.mp(bot, b.lax(Imp(BOT, Rel(acc, Var(c)))))
    return b.mp(b.gen(b.deduce(acc_c, lt), c), inst)


def gated_node(t: Theory, gate: ProofNode, a: int, index: int) -> ProofNode:
    """Apply the gated rule: from a proof of Acc(a) conclude gated instance `index`."""
    g = normalize(gate.conclusion)
    th, j = _gate_theory(t, index, g.sym if isinstance(g, Rel) else None)
    if th is None or th.acc_symbol() is None:
        raise ProofError("the gate does not prove an Acc atom of this theory")
    fams = th.gated_families(a)
    return ProofNode(th.gated_formula(a, j), Gated(a, fams[j % len(fams)].name, index), (gate,))


__all__ = [
    "Builder", "Gated", "Hyp", "Infer", "LogicalAxiom", "NonLogicalAxiom", "ProofError", "ProofNode",
    "Verdict", "build_reflection", "build_truth_intro", "check", "conv_eq", "from_text", "gated_node",
    "prove_acc_zero", "sample_proof",
    "to_text",
]
