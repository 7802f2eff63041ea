"""Axiom families and the pinned Hilbert-style intuitionistic calculus.

A family maps a parameter p (a natural) to a formula and recognizes its own
instances: ``recover(F)`` returns a parameter with ``instance(p) is F`` or
None.  Parameters that do not describe an instance yield None from
``instance`` and the theory substitutes the family's default instance.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from ..formula.godel import decode, decode_term, encode, encode_term, NotAFormula
from ..formula.syntax import (
    BOT, All, AllS, And, CaptureError, Eq, Ex, ExS, Formula, Iff, Imp, Mem, Node, Not, Num, Or,
    Plus, Pred, Rel, Succ, Term, Times, Var, children, closed_atom_value, free_num_vars,
    free_set_vars, match_subst, subst, subst_set, _rebuild,
)
from ..pairing import pair, pair2, unpair, unpair2


@dataclass(frozen=True)
class Family:
    name: str
    instance: Callable[[int], Optional[Formula]]
    recover: Callable[[Formula], Optional[int]]
    logical: bool = False

    def build(self, p: int) -> Formula | None:
        try:
            return self.instance(p)
        except (CaptureError, NotAFormula, ValueError, RecursionError):
            return None

    def match(self, f: Formula) -> int | None:
        p = self.recover(f)
        if p is None:
            return None
        return p if self.build(p) is f else None


def _forms(p: int, k: int) -> list[Formula] | None:
    codes = unpair(p, k) if k > 1 else (p,)
    out = [decode(c) for c in codes]
    return None if any(f is None for f in out) else out


def _enc(*fs: Formula) -> int:
    return pair([encode(f) for f in fs]) if len(fs) > 1 else encode(fs[0])


def _shape_family(name: str, arity: int, build: Callable[..., Formula],
                  destruct: Callable[[Formula], Optional[tuple]]) -> Family:
    def instance(p: int) -> Formula | None:
        fs = _forms(p, arity)
        return None if fs is None else build(*fs)

    def recover(f: Formula) -> int | None:
        parts = destruct(f)
        return None if parts is None else _enc(*parts)

    return Family(name, instance, recover, logical=True)


def _imp(f: Formula) -> tuple | None:
    return (f.a, f.b) if isinstance(f, Imp) else None


def _d_k(f):
    x = _imp(f)
    if x and isinstance(x[1], Imp) and x[1].b is x[0]:
        return (x[0], x[1].a)
    return None


def _d_s(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp) or not isinstance(x[0].b, Imp):
        return None
    a, b, c = x[0].a, x[0].b.a, x[0].b.b
    return (a, b, c) if x[1] is Imp(Imp(a, b), Imp(a, c)) else None


def _d_perm(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp) or not isinstance(x[0].b, Imp):
        return None
    a, b, c = x[0].a, x[0].b.a, x[0].b.b
    return (a, b, c) if x[1] is Imp(b, Imp(a, c)) else None


def _d_curry(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp) or not isinstance(x[0].a, And):
        return None
    a, b, c = x[0].a.a, x[0].a.b, x[0].b
    return (a, b, c) if x[1] is Imp(a, Imp(b, c)) else None


def _d_uncurry(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp) or not isinstance(x[0].b, Imp):
        return None
    a, b, c = x[0].a, x[0].b.a, x[0].b.b
    return (a, b, c) if x[1] is Imp(And(a, b), c) else None


def _d_andi(f):
    x = _imp(f)
    if x and isinstance(x[1], Imp) and x[1].b is And(x[0], x[1].a):
        return (x[0], x[1].a)
    return None


def _d_ande(side):
    def d(f):
        x = _imp(f)
        if x and isinstance(x[0], And) and x[1] is (x[0].a if side == 0 else x[0].b):
            return (x[0].a, x[0].b)
        return None
    return d


def _d_ori(side):
    def d(f):
        x = _imp(f)
        if x and isinstance(x[1], Or) and x[0] is (x[1].a if side == 0 else x[1].b):
            return (x[1].a, x[1].b)
        return None
    return d


def _d_ore(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp) or not isinstance(x[1], Imp) or not isinstance(x[1].a, Imp):
        return None
    a, c = x[0].a, x[0].b
    b = x[1].a.a
    return (a, b, c) if x[1] is Imp(Imp(b, c), Imp(Or(a, b), c)) else None


def _d_efq(f):
    x = _imp(f)
    return (x[1],) if x and x[0] is BOT else None


def _d_noti(f):
    x = _imp(f)
    if x and isinstance(x[1], Not) and x[0] is Imp(x[1].a, BOT):
        return (x[1].a,)
    return None


def _d_note(f):
    x = _imp(f)
    if x and isinstance(x[0], Not) and x[1] is Imp(x[0].a, BOT):
        return (x[0].a,)
    return None


def _d_iffi(f):
    x = _imp(f)
    if not x or not isinstance(x[0], Imp):
        return None
    a, b = x[0].a, x[0].b
    return (a, b) if x[1] is Imp(Imp(b, a), Iff(a, b)) else None


def _d_iffe(side):
    def d(f):
        x = _imp(f)
        if not x or not isinstance(x[0], Iff):
            return None
        a, b = x[0].a, x[0].b
        want = Imp(a, b) if side == 0 else Imp(b, a)
        return (a, b) if x[1] is want else None
    return d


# quantifier and equality schemas carry variable indices and terms

def _all_e_inst(p: int) -> Formula | None:
    i, a, t = unpair(p, 3)
    body = decode(a)
    if body is None:
        return None
    term = decode_term(t)
    return Imp(All(i, body), subst(body, i, term))


def _all_e_rec(f: Formula) -> int | None:
    if not isinstance(f, Imp) or not isinstance(f.a, All):
        return None
    i, body = f.a.i, f.a.a
    ok, t = match_subst(body, i, f.b)
    if not ok:
        return None
    return pair([i, encode(body), encode_term(t if t is not None else Var(i))])


def _ex_i_inst(p: int) -> Formula | None:
    i, a, t = unpair(p, 3)
    body = decode(a)
    if body is None:
        return None
    return Imp(subst(body, i, decode_term(t)), Ex(i, body))


def _ex_i_rec(f: Formula) -> int | None:
    if not isinstance(f, Imp) or not isinstance(f.b, Ex):
        return None
    i, body = f.b.i, f.b.a
    ok, t = match_subst(body, i, f.a)
    if not ok:
        return None
    return pair([i, encode(body), encode_term(t if t is not None else Var(i))])


def _set_match(body: Formula, j: int, target: Formula) -> int | None:
    """k with body[X_k/X_j] == target (j itself when X_j is not free)."""
    if j not in free_set_vars(body):
        return j if body is target else None
    cands = free_set_vars(target) | {j}
    for k in sorted(cands):
        try:
            if subst_set(body, j, k) is target:
                return k
        except CaptureError:
            continue
    return None


def _all_es_inst(p: int) -> Formula | None:
    j, a, k = unpair(p, 3)
    body = decode(a)
    return None if body is None else Imp(AllS(j, body), subst_set(body, j, k))


def _all_es_rec(f: Formula) -> int | None:
    if not isinstance(f, Imp) or not isinstance(f.a, AllS):
        return None
    k = _set_match(f.a.a, f.a.j, f.b)
    return None if k is None else pair([f.a.j, encode(f.a.a), k])


def _ex_is_inst(p: int) -> Formula | None:
    j, a, k = unpair(p, 3)
    body = decode(a)
    return None if body is None else Imp(subst_set(body, j, k), ExS(j, body))


def _ex_is_rec(f: Formula) -> int | None:
    if not isinstance(f, Imp) or not isinstance(f.b, ExS):
        return None
    k = _set_match(f.b.a, f.b.j, f.a)
    return None if k is None else pair([f.b.j, encode(f.b.a), k])


def _eq_refl_inst(p: int) -> Formula:
    t = decode_term(p)
    return Eq(t, t)


def _eq_refl_rec(f: Formula) -> int | None:
    return encode_term(f.a) if isinstance(f, Eq) and f.a is f.b else None


def _anti_unify(x: Node, y: Node, s: Term, t: Term, i: int) -> Node | None:
    """A with A[s/v_i] = x and A[t/v_i] = y, abstracting only differing positions."""
    if x is y:
        return x
    if x is s and y is t:
        return Var(i)
    if type(x) is not type(y):
        return None
    if isinstance(x, (Var, Num)) or isinstance(x, Formula) and not children(x) and not isinstance(x, Pred):
        return None
    if isinstance(x, (All, Ex)) and x.i != y.i:
        return None
    if isinstance(x, (AllS, ExS)) and x.j != y.j:
        return None
    if isinstance(x, Mem) and x.j != y.j:
        return None
    if hasattr(x, "name") and getattr(x, "name") != getattr(y, "name"):
        return None
    if isinstance(x, Rel) and (x.sym.kind, x.sym.level, x.sym.name, x.sym.index is None) != \
            (y.sym.kind, y.sym.level, y.sym.name, y.sym.index is None):
        return None
    from ..formula.syntax import Quote
    if isinstance(x, Quote) and (x.template is not y.template or [k for k, _ in x.nums] != [k for k, _ in y.nums]
                                 or [k for k, _ in x.forms] != [k for k, _ in y.forms]):
        return None
    cx, cy = children(x), children(y)
    if len(cx) != len(cy):
        return None
    kids = []
    for p, q in zip(cx, cy):
        r = _anti_unify(p, q, s, t, i)
        if r is None:
            return None
        kids.append(r)
    return _rebuild(x, kids)


def _eq_sub_inst(p: int) -> Formula | None:
    i, a, s, t = unpair(p, 4)
    body = decode(a)
    if body is None:
        return None
    st, tt = decode_term(s), decode_term(t)
    return Imp(Eq(st, tt), Imp(subst(body, i, st), subst(body, i, tt)))


def _eq_sub_rec(f: Formula) -> int | None:
    if not (isinstance(f, Imp) and isinstance(f.a, Eq) and isinstance(f.b, Imp)):
        return None
    s, t = f.a.a, f.a.b
    x, y = f.b.a, f.b.b
    from ..formula.syntax import fresh_var
    i = fresh_var(f, start=1000)
    body = _anti_unify(x, y, s, t, i)
    if body is None:
        return None
    return pair([i, encode(body), encode_term(s), encode_term(t)])


def _comp_inst(p: int) -> Formula | None:
    atom = decode(p)
    if atom is None or not isinstance(atom, (Eq, Pred)) or free_num_vars(atom):
        return None
    val = closed_atom_value(atom)
    if val is None:
        return None
    return atom if val else Not(atom)


def _comp_rec(f: Formula) -> int | None:
    atom = f.a if isinstance(f, Not) else f
    if not isinstance(atom, (Eq, Pred)):
        return None
    return encode(atom)


LOGICAL = [
    _shape_family("K", 2, lambda a, b: Imp(a, Imp(b, a)), _d_k),
    _shape_family("S", 3, lambda a, b, c: Imp(Imp(a, Imp(b, c)), Imp(Imp(a, b), Imp(a, c))), _d_s),
    _shape_family("Perm", 3, lambda a, b, c: Imp(Imp(a, Imp(b, c)), Imp(b, Imp(a, c))), _d_perm),
    _shape_family("Curry", 3, lambda a, b, c: Imp(Imp(And(a, b), c), Imp(a, Imp(b, c))), _d_curry),
    _shape_family("Uncurry", 3, lambda a, b, c: Imp(Imp(a, Imp(b, c)), Imp(And(a, b), c)), _d_uncurry),
    _shape_family("AndI", 2, lambda a, b: Imp(a, Imp(b, And(a, b))), _d_andi),
    _shape_family("AndE1", 2, lambda a, b: Imp(And(a, b), a), _d_ande(0)),
    _shape_family("AndE2", 2, lambda a, b: Imp(And(a, b), b), _d_ande(1)),
    _shape_family("OrI1", 2, lambda a, b: Imp(a, Or(a, b)), _d_ori(0)),
    _shape_family("OrI2", 2, lambda a, b: Imp(b, Or(a, b)), _d_ori(1)),
    _shape_family("OrE", 3, lambda a, b, c: Imp(Imp(a, c), Imp(Imp(b, c), Imp(Or(a, b), c))), _d_ore),
    _shape_family("Efq", 1, lambda a: Imp(BOT, a), _d_efq),
    _shape_family("NotI", 1, lambda a: Imp(Imp(a, BOT), Not(a)), _d_noti),
    _shape_family("NotE", 1, lambda a: Imp(Not(a), Imp(a, BOT)), _d_note),
    _shape_family("IffI", 2, lambda a, b: Imp(Imp(a, b), Imp(Imp(b, a), Iff(a, b))), _d_iffi),
    _shape_family("IffE1", 2, lambda a, b: Imp(Iff(a, b), Imp(a, b)), _d_iffe(0)),
    _shape_family("IffE2", 2, lambda a, b: Imp(Iff(a, b), Imp(b, a)), _d_iffe(1)),
    Family("AllE", _all_e_inst, _all_e_rec, logical=True),
    Family("ExI", _ex_i_inst, _ex_i_rec, logical=True),
    Family("AllES", _all_es_inst, _all_es_rec, logical=True),
    Family("ExIS", _ex_is_inst, _ex_is_rec, logical=True),
    Family("EqRefl", _eq_refl_inst, _eq_refl_rec, logical=True),
    Family("EqSub", _eq_sub_inst, _eq_sub_rec, logical=True),
    Family("Comp", _comp_inst, _comp_rec, logical=True),
]
LOGICAL_BY_NAME = {f.name: f for f in LOGICAL}


def fixed_family(name: str, formula: Formula) -> Family:
    return Family(name, lambda p: formula, lambda f: 0 if f is formula else None)


x_, y_ = Var(0), Var(1)
PEANO = [
    fixed_family("P1", All(0, Not(Eq(Succ(x_), Num(0))))),
    fixed_family("P2", All(0, All(1, Imp(Eq(Succ(x_), Succ(y_)), Eq(x_, y_))))),
    fixed_family("P3", All(0, Eq(Plus(x_, Num(0)), x_))),
    fixed_family("P4", All(0, All(1, Eq(Plus(x_, Succ(y_)), Succ(Plus(x_, y_)))))),
    fixed_family("P5", All(0, Eq(Times(x_, Num(0)), Num(0)))),
    fixed_family("P6", All(0, All(1, Eq(Times(x_, Succ(y_)), Plus(Times(x_, y_), x_))))),
]


def induction_instance(i: int, body: Formula) -> Formula:
    base = subst(body, i, Num(0))
    step = All(i, Imp(body, subst(body, i, Succ(Var(i)))))
    return Imp(And(base, step), All(i, body))


def _ind_inst(p: int) -> Formula | None:
    i, a = unpair2(p)
    body = decode(a)
    return None if body is None else induction_instance(i, body)


def _ind_rec(f: Formula) -> int | None:
    if not (isinstance(f, Imp) and isinstance(f.b, All)):
        return None
    return pair2(f.b.i, encode(f.b.a))


INDUCTION = Family("Ind", _ind_inst, _ind_rec)


# ---------------------------------------------------------------------------
# deduction rules as triples <premise1, premise2, conclusion>

DEFAULT_TRIPLE = (BOT, Imp(BOT, BOT), BOT)
RULES = ("MP", "GenN", "QAllN", "QExN", "GenS", "QAllS", "QExS")


def rule_triple(r: int, p: int) -> tuple[Formula, Formula, Formula] | None:
    try:
        if r == 0:
            a, b = _forms(p, 2) or (None, None)
            return None if a is None else (a, Imp(a, b), b)
        if r in (1, 4):
            i, a = unpair2(p)
            f = decode(a)
            if f is None:
                return None
            return (f, f, All(i, f) if r == 1 else AllS(i, f))
        if r in (2, 3, 5, 6):
            i, a, b = unpair(p, 3)
            fa, fb = decode(a), decode(b)
            if fa is None or fb is None:
                return None
            free = free_num_vars(fb) if r in (2, 3) else free_set_vars(fb)
            if i in free:
                return None
            if r == 2:
                prem = Imp(fb, fa)
                return (prem, prem, Imp(fb, All(i, fa)))
            if r == 3:
                prem = Imp(fa, fb)
                return (prem, prem, Imp(Ex(i, fa), fb))
            if r == 5:
                prem = Imp(fb, fa)
                return (prem, prem, Imp(fb, AllS(i, fa)))
            prem = Imp(fa, fb)
            return (prem, prem, Imp(ExS(i, fa), fb))
    except (NotAFormula, ValueError):
        return None
    return None


def ded_code(n: int) -> int:
    """Code of the n-th rule triple (the default MP triple for junk)."""
    r, p = unpair2(n)
    t = rule_triple(r, p) if r < len(RULES) else None
    t = t or DEFAULT_TRIPLE
    return pair([encode(x) for x in t])


def recover_ded(rule: str, premises: tuple[Formula, ...], conclusion: Formula) -> int | None:
    """ded index of a rule application, None if it is not an instance."""
    r = RULES.index(rule)
    if r == 0:
        a, ab = premises
        if not isinstance(ab, Imp) or ab.a is not a or ab.b is not conclusion:
            return None
        p = pair([encode(a), encode(conclusion)])
    elif r in (1, 4):
        q = conclusion
        if not isinstance(q, All if r == 1 else AllS) or q.a is not premises[0]:
            return None
        p = pair2(q.i if r == 1 else q.j, encode(premises[0]))
    else:
        prem, c = premises[0], conclusion
        if not (isinstance(prem, Imp) and isinstance(c, Imp)):
            return None
        if r in (2, 5):
            q = c.b
            qcls = All if r == 2 else AllS
            if not isinstance(q, qcls) or c.a is not prem.a or q.a is not prem.b:
                return None
            p = pair([q.i if r == 2 else q.j, encode(prem.b), encode(prem.a)])
        else:
            q = c.a
            qcls = Ex if r == 3 else ExS
            if not isinstance(q, qcls) or c.b is not prem.b or q.a is not prem.a:
                return None
            p = pair([q.i if r == 3 else q.j, encode(prem.a), encode(prem.b)])
    n = pair2(r, p)
    t = rule_triple(r, p)
    if t is None or t[2] is not conclusion:
        return None
    return n
