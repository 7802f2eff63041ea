"""Recursively presented theories: Z1i, Tarski(S), ordered and kappa/lambda iterates.

Every theory enumerates its non-logical axioms with ``ax`` (family ``i mod F``,
parameter ``i div F``), decides them with ``is_axiom``, and registers the
function and predicate symbols that talk about it (``ax@NAME``, ``ded@NAME``,
``cn@NAME``, ``der@NAME``).  ``ax@NAME`` enumerates all axioms, logical ones
included, since that is what the truth axioms quantify over.
"""

from __future__ import annotations

import functools
import re
from typing import Callable, Iterable, Optional

from ..formula.functions import has_fn, has_pred, register_fn, register_pred
from ..formula.godel import decode, encode
from ..formula.schemata import Lam, build_jk, build_prog, prec
from ..formula.syntax import (
    BOT, All, And, Eq, Ex, Fn, Formula, Iff, Imp, Not, Num, Or, Pred, Quote, Rel, RelSym, Succ,
    Term, Var, children, conj, fn, free_set_vars, has_holes, preds_and_fns, pred, relsyms, sym_index_value,
)
from ..formula.syntaxfns import bicond_h, close_g, subst_f, truth_bicond
from ..pairing import pair, pair2, proj, unpair, unpair2
from ..ord_core import NotationError
from ..systems import SYSTEMS, NotationSystem, ext_type
from .families import (
    INDUCTION, LOGICAL, PEANO, Family, DEFAULT_TRIPLE, RULES, fixed_family, recover_ded, rule_triple,
)

Kind = tuple[str, int]

DEFAULT_AXIOM = LOGICAL[0].build(0)  # bot -> (bot -> bot)


def _register_globals() -> None:
    for i in (1, 2, 3):
        register_fn(f"pi{i}", lambda n, i=i: proj(i, n, 3))
    register_fn("f", subst_f)
    register_fn("g", close_g)
    register_fn("fa", lambda a, n, i, k: subst_f(n, i, k))
    register_fn("ga", lambda a, n, i: close_g(n, i))
    register_fn("lf", lambda k: pair2(0, k))
    register_fn("nd", lambda m, q, r: pair2(1, pair([m, q, r])))
    register_pred("bd", lambda n: (f := decode(n)) is not None and not free_set_vars(f))


_register_globals()


def _vs(*idx: int) -> list[Var]:
    return [Var(i) for i in idx]


class Theory:
    """A recursively axiomatized theory with an optional Acc-gated rule family."""

    def __init__(self, name: str, level: int, kinds: Iterable[Kind], families: list[Family],
                 base: "Theory | None" = None, system: str | None = None):
        self.name = name
        self.level = level
        self.kinds = frozenset(kinds)
        self.families = tuple(families)
        self.base = base
        self.system = system
        self._gated: dict[int, tuple[Family, ...]] = {}
        self._register()

    def __repr__(self) -> str:
        return f"Theory({self.name!r})"

    # -- language ---------------------------------------------------------
    def in_language(self, f: Formula) -> bool:
        return _in_language(f, self.kinds)

    # -- non-logical axioms ---------------------------------------------
    def axiom_formula(self, i: int) -> Formula:
        fam = self.families[i % len(self.families)]
        f = fam.build(i // len(self.families))
        if f is None or not self.in_language(f):
            f = self.families[0].build(0)
        return f

    def ax(self, i: int) -> int:
        return encode(self.axiom_formula(i))

    def match_axiom(self, f: Formula) -> tuple[str, int] | None:
        """(family name, enumeration index) of a non-logical axiom."""
        if not self.in_language(f):
            return None
        nf = len(self.families)
        for j, fam in enumerate(self.families):
            p = fam.match(f)
            if p is not None:
                return fam.name, p * nf + j
        return None

    def is_axiom(self, n: int) -> bool:
        f = decode(n)
        return f is not None and self.match_axiom(f) is not None

    # -- logical axioms and rules ---------------------------------------
    def match_logical(self, f: Formula) -> tuple[str, int] | None:
        if not self.in_language(f):
            return None
        nl = len(LOGICAL)
        for j, fam in enumerate(LOGICAL):
            p = fam.match(f)
            if p is not None:
                return fam.name, p * nl + j
        return None

    def ax_all_formula(self, i: int) -> Formula:
        """Even indices: logical axioms; odd: the non-logical enumeration."""
        q, side = divmod(i, 2)
        if side:
            return self.axiom_formula(q)
        fam = LOGICAL[q % len(LOGICAL)]
        f = fam.build(q // len(LOGICAL))
        return f if f is not None and self.in_language(f) else DEFAULT_AXIOM

    def ax_all(self, i: int) -> int:
        return encode(self.ax_all_formula(i))

    def ax_all_index(self, f: Formula) -> int | None:
        m = self.match_logical(f)
        if m is not None:
            return 2 * m[1]
        m = self.match_axiom(f)
        return None if m is None else 2 * m[1] + 1

    def ded_triple(self, n: int) -> tuple[Formula, Formula, Formula]:
        r, p = unpair2(n)
        t = rule_triple(r, p) if r < len(RULES) else None
        if t is None or not all(self.in_language(x) for x in t):
            return DEFAULT_TRIPLE
        return t

    def ded(self, n: int) -> int:
        return pair([encode(x) for x in self.ded_triple(n)])

    def ded_index(self, rule: str, premises: tuple[Formula, ...], conclusion: Formula) -> int | None:
        n = recover_ded(rule, premises, conclusion)
        if n is None or self.ded_triple(n) is DEFAULT_TRIPLE:
            return None
        return n

    def is_ded(self, n: int) -> bool:
        a, b, c = (decode(x) for x in unpair(n, 3))
        if a is None or b is None or c is None:
            return False
        if pair([encode(a), encode(b), encode(c)]) != n:
            return False
        if self.ded_index("MP", (a, b), c) is not None:
            return True
        return a is b and any(self.ded_index(r, (a,), c) is not None for r in RULES[1:])

    # -- Acc-gated rules --------------------------------------------------
    def gated_families(self, a: int) -> tuple[Family, ...]:
        return ()

    def gated_formula(self, a: int, i: int) -> Formula:
        fams = self.gated_families(a)
        if not fams:
            raise ValueError(f"{self.name} has no gated rules")
        f = fams[i % len(fams)].build(i // len(fams))
        if f is None or not self.in_language(f):
            f = fams[0].build(0)
        return f

    def gated_instances(self, a: int, i: int) -> int:
        return encode(self.gated_formula(a, i))

    def match_gated(self, a: int, f: Formula) -> tuple[str, int] | None:
        fams = self.gated_families(a)
        if not fams or not self.in_language(f):
            return None
        for j, fam in enumerate(fams):
            p = fam.match(f)
            if p is not None:
                return fam.name, p * len(fams) + j
        return None

    def acc_symbol(self) -> RelSym | None:
        return None

    # -- derivations as numbers (used by Prov) ---------------------------
    def cn(self, p: int) -> int:
        tag, body = unpair2(p)
        if tag == 0:
            return self.ax_all(body)
        if tag == 1:
            return proj(3, self.ded(proj(1, body, 3)), 3)
        return 0

    def height(self, p: int) -> int | None:
        tag, body = unpair2(p)
        if tag == 0:
            return 1
        if tag != 1:
            return None
        m, q, r = unpair(body, 3)
        t = self.ded(m)
        if self.cn(q) != proj(1, t, 3) or self.cn(r) != proj(2, t, 3):
            return None
        hq, hr = self.height(q), self.height(r)
        if hq is None or hr is None:
            return None
        return 1 + max(hq, hr)

    def der(self, h: int, p: int) -> bool:
        ht = self.height(p)
        return ht is not None and ht <= h

    def _register(self) -> None:
        t = self.name
        register_fn(f"ax@{t}", self.ax_all)
        register_fn(f"ded@{t}", self.ded)
        register_fn(f"cn@{t}", self.cn)
        register_pred(f"der@{t}", self.der)

    # formulas about this theory, used by Tarski(self)
    def ax_term(self, n: Term) -> Term:
        return fn(f"ax@{self.name}", n)

    def ded_term(self, n: Term) -> Term:
        return fn(f"ded@{self.name}", n)

    def cn_term(self, p: Term) -> Term:
        return fn(f"cn@{self.name}", p)

    def der_atom(self, h: Term, p: Term) -> Formula:
        return pred(f"der@{self.name}", h, p)

    def prov(self, x: Term, h: int = 100, p: int = 101) -> Formula:
        """Prov(x): some derivation of finite height concludes x."""
        return Ex(h, Ex(p, And(self.der_atom(Var(h), Var(p)), Eq(self.cn_term(Var(p)), x))))


def _in_language(f: Formula, kinds: frozenset) -> bool:
    if has_holes(f):
        return False
    for s in relsyms(f):
        if (s.kind, s.level) not in kinds:
            return False
    for kind, name in preds_and_fns(f):
        if not (has_fn(name) if kind == "fn" else has_pred(name)):
            return False
    return True


# ---------------------------------------------------------------------------
# Z1i

def _z1i() -> Theory:
    return Theory("z1i", 0, (), PEANO + [INDUCTION])


# ---------------------------------------------------------------------------
# Tarski(S)

def pis(t: Term) -> tuple[Term, Term, Term]:
    return fn("pi1", t), fn("pi2", t), fn("pi3", t)


def _tschema(name: str, sym: RelSym, allowed: Callable[[Formula], bool]) -> Family:
    def instance(p: int) -> Formula | None:
        a = decode(p)
        if a is None or free_set_vars(a) or not allowed(a):
            return None
        return truth_bicond(a, sym)

    def recover(f: Formula) -> int | None:
        if isinstance(f, Iff) and isinstance(f.b, Rel) and f.b.sym is sym:
            return encode(f.a)
        return None

    return Family(name, instance, recover)


def definitional_axioms(s: Theory) -> list[Family]:
    """Der/cn facts that make Prov usable inside Tarski(S)."""
    h, p, k, m, q, r = _vs(0, 1, 2, 3, 4, 5)
    lf = fn("lf", k)
    node = fn("nd", m, q, r)
    d1, d2, _ = pis(s.ded_term(m))
    links = conj(s.der_atom(h, q), s.der_atom(h, r), Eq(s.cn_term(q), d1), Eq(s.cn_term(r), d2))
    ds = [
        All(1, Not(s.der_atom(Num(0), p))),
        All(0, All(2, s.der_atom(Succ(h), lf))),
        All(0, All(1, Imp(s.der_atom(Succ(h), p),
                          Or(Ex(2, Eq(lf, p)), Ex(3, Ex(4, Ex(5, And(Eq(node, p), links)))))))),
        All(2, Eq(s.ax_term(k), s.cn_term(lf))),
        All(3, All(4, All(5, Eq(pis(s.ded_term(m))[2], s.cn_term(node))))),
        All(0, All(3, All(4, All(5, Imp(links, s.der_atom(Succ(h), node)))))),
    ]
    return [fixed_family(f"D{i + 1}", d) for i, d in enumerate(ds)]


class TarskiTheory(Theory):
    def __init__(self, s: Theory, name: str | None = None):
        level = s.level + 1
        self.T = RelSym("T", level, None, "")
        T = lambda t: Rel(self.T, t)  # noqa: E731
        v0, v1, v2 = _vs(0, 1, 2)
        p1, p2, p3 = pis(s.ded_term(v0))
        fams = list(s.families) + [
            fixed_family("TAx", All(0, T(s.ax_term(v0)))),
            fixed_family("TDed", All(0, Imp(And(T(p1), T(p2)), T(p3)))),
            fixed_family("TOmega", All(0, All(1, Iff(All(2, T(fn("f", v0, v1, v2))), T(fn("g", v0, v1)))))),
            _tschema("TSchema", self.T, s.in_language),
        ] + definitional_axioms(s)
        super().__init__(name or f"tarski({s.name})", level, s.kinds | {("T", level)}, fams, base=s)


# ---------------------------------------------------------------------------
# Tarski along an order, and the kappa / lambda variants

class OrderedTheory(Theory):
    """Acc and T_a (and Acc_a for the ext systems) at level S.level + 1."""

    flavour = "g0"

    def __init__(self, s: Theory, system: str, name: str | None = None):
        level = s.level + 1
        self.sys: NotationSystem = SYSTEMS[system]
        self.Acc = RelSym("Acc", level, None, "")
        self.gate_kinds = ("TA",) if self.flavour == "g0" else ("TA", "AccA")
        kinds = s.kinds | {("Acc", level)} | {(k, level) for k in self.gate_kinds}
        self.level = level
        self.system = system
        fams = list(s.families) + self.ungated_families()
        super().__init__(name or f"tarski_{system}({s.name})", level, kinds, fams, base=s, system=system)

    def acc_symbol(self) -> RelSym:
        return self.Acc

    def acc(self, t: Term) -> Formula:
        return Rel(self.Acc, t)

    def prec(self, t: Term, s: Term) -> Formula:
        return prec(t, s, self.system)

    def ungated_families(self) -> list[Family]:
        return [
            fixed_family("ProgAcc", build_prog(Lam(0, self.acc(Var(0))), self.system)),
            fixed_family("Least", All(0, Not(self.prec(Var(0), Num(0))))),
        ]

    # -- readability -------------------------------------------------------
    def readable(self, f: Formula, a: int) -> bool:
        if not self.base.in_language(_strip_level(f, self.level)):
            return False
        for s in relsyms(f):
            if s.level != self.level:
                continue
            if s.kind not in self.gate_kinds:
                return False
            b = sym_index_value(s)
            if b is None or not self.sys.prec(b, a):
                return False
        return True

    def readable_code(self, a: int, n: int) -> bool:
        f = decode(n)
        return f is not None and self.readable(f, a)

    def axa_formula(self, a: int, n: int) -> Formula:
        q, side = divmod(n, 3)
        if side == 1:
            return self.base.ax_all_formula(q)
        fam = INDUCTION if side == 2 else LOGICAL[q % len(LOGICAL)]
        p = q if side == 2 else q // len(LOGICAL)
        f = fam.build(p)
        return f if f is not None and self.readable(f, a) else DEFAULT_AXIOM

    def deda(self, a: int, n: int) -> int:
        r, p = unpair2(n)
        t = rule_triple(r, p) if r < len(RULES) else None
        if t is None or not all(self.readable(x, a) for x in t):
            t = DEFAULT_TRIPLE
        return pair([encode(x) for x in t])

    def _register(self) -> None:
        super()._register()
        t, L = self.name, self.level
        register_fn(f"axa@{t}", lambda a, n: encode(self.axa_formula(a, n)))
        register_fn(f"deda@{t}", self.deda)
        register_pred(f"rd@{t}", self.readable_code)
        register_pred(f"rd@{self.system}.{L}", self.readable_code)
        register_fn(f"bic@{self.system}.{L}", lambda b, n: bicond_h(b, n, L))

    # -- gated rules ------------------------------------------------------
    def t_a(self, idx: Term) -> RelSym:
        return RelSym("TA", self.level, idx, "")

    def acc_a(self, idx: Term) -> RelSym:
        return RelSym("AccA", self.level, idx, "")

    def rd(self, a: Term, n: Term) -> Formula:
        return pred(f"rd@{self.name}", a, n)

    def gated_families(self, a: int) -> tuple[Family, ...]:
        fams = self._gated.get(a)
        if fams is None:
            fams = self._gated[a] = tuple(self.truth_families(a) + self.acc_families(a))
        return fams

    def truth_families(self, a: int) -> list[Family]:
        abar = Num(a)
        sym = self.t_a(abar)
        T = lambda t: Rel(sym, t)  # noqa: E731
        v0, v1, v2 = _vs(0, 1, 2)
        p1, p2, p3 = pis(fn(f"deda@{self.name}", abar, v0))
        g4_hyp = [self.prec(v0, abar)]
        if "AccA" in self.gate_kinds:
            g4_hyp.append(Rel(self.acc_a(abar), v0))
        g4_hyp += [self.rd(v0, v1), pred("bd", v1)]
        return [
            fixed_family("G1", All(0, T(fn(f"axa@{self.name}", abar, v0)))),
            fixed_family("G2", All(0, Imp(And(T(p1), T(p2)), T(p3)))),
            fixed_family("G3", All(0, All(1, Imp(self.rd(abar, v0), Iff(
                All(2, T(fn("fa", abar, v0, v1, v2))), T(fn("ga", abar, v0, v1))))))),
            fixed_family("G4", All(0, All(1, Imp(conj(*g4_hyp),
                                                 T(fn(f"bic@{self.system}.{self.level}", v0, v1)))))),
            _tschema("G5", sym, lambda f: self.readable(f, a)),
        ]

    def acc_families(self, a: int) -> list[Family]:
        return []


def _strip_level(f: Formula, level: int) -> Formula:
    """Replace level-`level` atoms by bot so the rest can be language-checked."""
    from ..formula.syntax import _rebuild, children
    if isinstance(f, Rel) and f.sym.level == level:
        return BOT
    if isinstance(f, Formula) and children(f):
        return _rebuild(f, [_strip_level(c, level) if isinstance(c, Formula) else c for c in children(f)])
    return f


class KappaTheory(OrderedTheory):
    flavour = "ext"

    def seq(self, x: Term, a: Term) -> Formula:
        return pred(f"seq@{self.system}", x, a)

    def typ(self, a: Term, k: int) -> Formula:
        if k == 0:
            return pred(f"typ0@{self.system}", a)
        return pred(f"typ@{self.system}", a, Num(k))

    def type_of(self, a: int) -> int | None:
        try:
            return ext_type(self.sys, a)
        except NotationError:
            return None

    def _seq_lam(self, a: Term, rel: Callable[[Term], Formula], var: int) -> Lam:
        return Lam(var, Imp(self.seq(Var(var), a), rel(Var(var))))

    def closure(self, k: int) -> Formula:
        """Acceptance of a level a of type k from its canonical sequence."""
        a = Var(0)
        if k == 0:
            prem = All(1, Imp(self.seq(Var(1), a), self.acc(Var(1))))
        elif k == 1:
            prem = build_prog(self._seq_lam(a, self.acc, 1), self.system)
        else:
            prem = self.jump_premise(a, k, self.acc)
        return All(0, Imp(self.typ(a, k), Imp(prem, self.acc(a))))

    def jump_premise(self, a: Term, k: int, rel: Callable[[Term], Formula]) -> Formula:
        raise ValueError("kappa terms have types 0 and 1 only")

    def ungated_families(self) -> list[Family]:
        return [
            fixed_family("K0", self.closure(0)),
            fixed_family("K1", self.closure(1)),
            fixed_family("Least", All(0, Not(self.prec(Var(0), Num(0))))),
        ]

    def quoted_acceptance(self, k: int, b: Term) -> Formula:
        """T_a of the acceptance statement for level b of type k, as a quote term body."""
        tb = 95
        accb = lambda t: Rel(self.acc_a(Var(tb)), t)  # noqa: E731
        if k == 0:
            body = All(96, Imp(self.seq(Var(96), Var(tb)), accb(Var(96))))
        elif k == 1:
            body = build_prog(self._seq_lam(Var(tb), accb, 96), self.system)
        else:
            body = self.jump_premise(Var(tb), k, accb)
        return Quote(body, ((tb, b),), ())

    def acc_families(self, a: int) -> list[Family]:
        abar = Num(a)
        acc_a = lambda t: Rel(self.acc_a(abar), t)  # noqa: E731
        T = lambda t: Rel(self.t_a(abar), t)  # noqa: E731
        b, c = Var(1), Var(2)
        k = self.type_of(a)
        out = []
        if k == 0:
            out.append(fixed_family("II1", All(1, Imp(self.seq(b, abar), acc_a(b)))))
        elif k == 1:
            out.append(fixed_family("II2", build_prog(self._seq_lam(abar, acc_a, 1), self.system)))
        elif k is not None and k <= getattr(self, "MAX_TYPE", 1):
            out.append(fixed_family("II2k", self.jump_premise(abar, k, acc_a)))
            out.append(fixed_family("IIh", acc_a(fn(f"hh@{self.system}", abar))))
        below = [self.prec(b, abar), acc_a(b)]
        out.append(fixed_family("II3", All(1, Imp(conj(*below, self.typ(b, 0)),
                                                  T(self.quoted_acceptance(0, b))))))
        out.append(fixed_family("II4", All(1, Imp(conj(*below, self.not_typ0_or_1(b)),
                                                  T(self.quoted_acceptance(1, b))))))
        out += self.higher_type_families(a)
        acc_b_c = Quote(Rel(self.acc_a(Var(95)), Var(96)), ((95, b), (96, c)), ())
        out.append(fixed_family("II5", All(1, All(2, Imp(
            conj(self.prec(c, b), self.prec(b, abar), acc_a(b)),
            Iff(acc_a(c), T(acc_b_c)))))))
        out.append(fixed_family("II6", All(1, Imp(self.prec(b, abar), Iff(self.acc(b), acc_a(b))))))
        return out

    def not_typ0_or_1(self, b: Term) -> Formula:
        return Not(self.typ(b, 0))

    def higher_type_families(self, a: int) -> list[Family]:
        return []


class LambdaTheory(KappaTheory):
    """The lambda sketch: kappa's clauses plus bounded jumpability for types k >= 2.

    J^k doubles in size with k, so the type-k families stop at MAX_TYPE.
    """

    MAX_TYPE = 5

    def jump_premise(self, a: Term, k: int, rel: Callable[[Term], Formula]) -> Formula:
        h = fn(f"hh@{self.system}", a)
        alpha = 90
        jump = build_jk(k - 1, h, a, Lam(91, rel(Var(91))), fn("lpiece@lambda", a, Var(alpha)), self.system)
        return And(rel(h), build_prog(Lam(alpha, jump), order="cprec"))

    def ungated_families(self) -> list[Family]:
        def inst(p: int) -> Formula | None:
            return self.closure(p + 2) if p + 2 <= self.MAX_TYPE else None

        return [
            fixed_family("L0", self.closure(0)),
            fixed_family("L1", self.closure(1)),
            Family("Lk", inst, self._type_param),
            fixed_family("Least", All(0, Not(self.prec(Var(0), Num(0))))),
        ]

    def not_typ0_or_1(self, b: Term) -> Formula:
        return self.typ(b, 1)

    def higher_type_families(self, a: int) -> list[Family]:
        abar = Num(a)
        acc_a = lambda t: Rel(self.acc_a(abar), t)  # noqa: E731
        T = lambda t: Rel(self.t_a(abar), t)  # noqa: E731
        b = Var(1)

        def inst(p: int) -> Formula | None:
            k = p + 2
            if k > self.MAX_TYPE:
                return None
            return All(1, Imp(conj(self.prec(b, abar), acc_a(b), self.typ(b, k)),
                              T(self.quoted_acceptance(k, b))))

        return [Family("II4k", inst, self._type_param)]

    def _type_param(self, f: Formula) -> int | None:
        """k - 2 for the first typ(., k) atom with k >= 2 (the family re-checks the rest)."""
        stack = [f]
        while stack:
            x = stack.pop()
            if isinstance(x, Pred) and x.name == f"typ@{self.system}" and isinstance(x.args[1], Num):
                k = x.args[1].n
                return k - 2 if k >= 2 else None
            stack.extend(c for c in children(x) if isinstance(c, Formula))
        return None


# ---------------------------------------------------------------------------
# finite iterates and the omega-union

class UnionTheory(Theory):
    """Union of the iterates S_1, S_2, ...; index <lvl, j> is axiom j of S_{lvl+1}."""

    def __init__(self, name: str, step: Callable[[int], Theory]):
        self.step = step
        self.name = name
        self.level = 10**9
        self.kinds = frozenset()
        self.families = ()
        self.base = step(0)
        self.system = None
        self._gated = {}
        self._register()

    def _level_of(self, f: Formula) -> int:
        return max([s.level for s in relsyms(f)] + [1])

    def in_language(self, f: Formula) -> bool:
        return self.step(self._level_of(f)).in_language(f)

    def axiom_formula(self, i: int) -> Formula:
        lvl, j = unpair2(i)
        return self.step(lvl + 1).axiom_formula(j)

    def match_axiom(self, f: Formula) -> tuple[str, int] | None:
        lvl = self._level_of(f)
        m = self.step(lvl).match_axiom(f)
        return None if m is None else (m[0], pair2(lvl - 1, m[1]))

    def match_logical(self, f: Formula) -> tuple[str, int] | None:
        return self.step(self._level_of(f)).match_logical(f)

    def ded_triple(self, n: int) -> tuple[Formula, Formula, Formula]:
        r, p = unpair2(n)
        t = rule_triple(r, p) if r < len(RULES) else None
        if t is None or not all(self.in_language(x) for x in t):
            return DEFAULT_TRIPLE
        return t

    def gated_families(self, a: int) -> tuple[Family, ...]:
        raise ValueError("use the level theories for gated rules of a union")

    def gated_formula(self, a: int, i: int) -> Formula:
        lvl, j = unpair2(i)
        return self.step(lvl + 1).gated_formula(a, j)

    def match_gated(self, a: int, f: Formula) -> tuple[str, int] | None:
        lvl = self._level_of(f)
        th = self.step(lvl)
        m = th.match_gated(a, f) if th.gated_families(a) else None
        return None if m is None else (m[0], pair2(lvl - 1, m[1]))

    def gated_level(self, f: Formula) -> Theory:
        return self.step(self._level_of(f))


# ---------------------------------------------------------------------------
# construction by name

_CACHE: dict[str, Theory] = {}


def z1i() -> Theory:
    return theory("z1i")


def tarski(s: Theory) -> Theory:
    return theory(f"tarski({s.name})")


def tarski_ordered(s: Theory, system: str = "g0") -> Theory:
    return theory(f"tarski_{system}({s.name})")


def tarski_kk(s: Theory) -> Theory:
    return theory(f"tarski_kk({s.name})")


def tarski_lambda(s: Theory) -> Theory:
    return theory(f"tarski_lambda({s.name})")


def iterate(s: Theory, n: int, system: str = "g0") -> Theory:
    return theory(f"tarski_{system}^{n}({s.name})") if n else s


def omega_union(s: Theory, system: str = "g0") -> Theory:
    return theory(f"tarski_{system}^omega({s.name})")


_NAME = re.compile(r"(tarski(?:_(g0|kk|lambda))?)(?:\^(\d+|omega))?\((.*)\)\Z")
THEORY_NAMES = ("z1i", "tarski^k(z1i)", "tarski_g0^n(z1i)", "tarski_g0^omega(z1i)",
                "tarski_kk(z1i)", "tarski_lambda(z1i)")


def _one_step(system: str | None, s: Theory, name: str) -> Theory:
    if system is None:
        return TarskiTheory(s, name)
    if system == "g0":
        return OrderedTheory(s, "g0", name)
    if system == "kk":
        return KappaTheory(s, "kk", name)
    return LambdaTheory(s, "lambda", name)


def theory(name: str) -> Theory:
    """Build (or fetch) a theory from its name, e.g. ``tarski_g0^2(z1i)``."""
    name = name.replace(" ", "")
    if name in _CACHE:
        return _CACHE[name]
    if name == "z1i":
        th = _z1i()
    else:
        m = _NAME.match(name)
        if not m:
            raise ValueError(f"unknown theory {name!r}; expected one of {', '.join(THEORY_NAMES)}")
        head, system, power, inner = m.groups()
        base = theory(inner)
        if power in ("0", "1"):
            th = base if power == "0" else theory(f"{head}({inner})")
        elif power is None:
            th = _one_step(system, base, name)
        elif power == "omega":
            th = UnionTheory(name, lambda k, h=head, i=inner: theory(f"{h}^{k}({i})") if k else theory(i))
        else:
            k = int(power)
            prev = theory(f"{head}^{k - 1}({inner})") if k > 2 else theory(f"{head}({inner})")
            th = _one_step(system, prev, name)
    _CACHE[name] = th
    return th


def is_axiom(t: Theory, n: int) -> bool:
    return t.is_axiom(n)


def gated_instances(t: Theory, a: int, i: int) -> int:
    return t.gated_instances(a, i)
