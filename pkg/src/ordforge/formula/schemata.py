"""Builders for the named formula schemata: Prog, TI, J, J^k, B, C and NOS.

A formula with a number hole is a ``Lam(var, body)``; ``Lam.at(t)`` plugs a
term in.  Orders and notation arithmetic appear as predicate and function
symbols (``prec@g0``, ``add@g0``, ...) evaluated through the notation systems.
"""

from __future__ import annotations

from typing import NamedTuple

from .. import ord_core, ord_ext
from ..systems import KK, LAMBDA, G0, NotationSystem, ext_h, ext_seq, ext_type
from .functions import register_fn, register_pred
from .syntax import (
    All, And, Ex, Formula, HoleApp, Imp, Mem, Not, Num, Or, Quote, Rel, RelSym, Term, Var, conj,
    fn, free_num_vars, fresh_var, num_vars_used, pred, rename_bound, subst,
)


class Lam(NamedTuple):
    var: int
    body: Formula

    def at(self, t: Term) -> Formula:
        body = rename_bound(self.body, free_num_vars(t))
        return subst(body, self.var, t)

    def vars(self) -> frozenset[int]:
        return num_vars_used(self.body) | {self.var}


def mem_lam(j: int) -> Lam:
    """x in X_j."""
    return Lam(0, Mem(Var(0), j))


def hole_lam(k: int = 0) -> Lam:
    """The inserted formula [[z_k]] as a hole."""
    return Lam(0, HoleApp(k, Var(0)))


def _fresh(avoid: set[int], start: int = 0) -> int:
    i = start
    while i in avoid:
        i += 1
    avoid.add(i)
    return i


def _vars(*things) -> set[int]:
    out: set[int] = set()
    for x in things:
        if isinstance(x, Lam):
            out |= x.vars()
        elif isinstance(x, (Formula, Term)):
            out |= num_vars_used(x)
    return out


# ---------------------------------------------------------------------------
# order and notation symbols

def prec(t: Term, s: Term, system: str = "g0") -> Formula:
    return pred(f"prec@{system}", t, s)


def preceq(t: Term, s: Term, system: str = "g0") -> Formula:
    from .syntax import Eq
    return Or(prec(t, s, system), Eq(t, s))


def n_add(t: Term, s: Term, system: str = "g0") -> Term:
    return fn(f"add@{system}", t, s)


def n_mul(t: Term, s: Term) -> Term:
    return fn("mul@g0", t, s)


def n_wpow(t: Term) -> Term:
    return fn("wpow@g0", t)


def n_phi(t: Term, s: Term) -> Term:
    return fn("phi@g0", t, s)


def _reg_system(sys: NotationSystem) -> None:
    tag = sys.name
    register_pred(f"prec@{tag}", sys.prec)


def _g0_fn(op):
    def run(*codes):
        return G0.encode(op(*[G0.decode(c) for c in codes]))
    return run


def _ext_add(sys: NotationSystem):
    def run(m, n):
        return sys.encode(ord_ext.ext_add(sys.decode(m), sys.decode(n)))
    return run


def _kwmul(alpha: int, b: int) -> int:
    """(kappa omega)^alpha * b for a coefficient code alpha and a kappa-code b."""
    base = ord_ext.kappa_omega_pow(ord_ext.decode_coeff(alpha))
    return KK.encode(_ext_mul(base, KK.decode(b)))


def _ext_mul(a: ord_ext.ExtTerm, b: ord_ext.ExtTerm) -> ord_ext.ExtTerm:
    # base * b for a monomial base, distributing over the runs of b;
    # kappa^e * c * kappa^f = kappa^(e+f) when f > 0, and coefficients of
    # finite exponent runs multiply the base coefficient
    if not a.runs or not b.runs:
        return ord_ext.ext_zero(a.system)
    if len(a.runs) != 1:
        raise ValueError("only monomial left factors are supported")
    (e, c), = a.runs
    out = ord_ext.ext_zero(a.system)
    for f, d in b.runs:
        if f.summands:
            out = ord_ext.ext_add(out, ord_ext.ext_monomial(a.system, ord_ext.cadd(e, f), d))
        else:
            out = ord_ext.ext_add(out, ord_ext.ext_monomial(a.system, e, _cmul(c, d)))
    return out


def _clog(p: ord_ext.FVPrincipal) -> ord_ext.CoeffTerm:
    # p = w^log(p); non-unary principals are epsilon numbers, their own logs
    return p.args[0] if len(p.args) == 1 else ord_ext.CoeffTerm((p,))


def _cmul(c: ord_ext.CoeffTerm, d: ord_ext.CoeffTerm) -> ord_ext.CoeffTerm:
    """c * d for a principal c = w^x, distributing over the summands of d."""
    if len(c.summands) != 1:
        raise ValueError("only principal left factors are supported")
    x = _clog(c.summands[0])
    out = ord_ext.CZERO
    for p in d.summands:
        out = ord_ext.cadd(out, ord_ext.fv_veblen([ord_ext.cadd(x, _clog(p))]))
    return out


def _fvomega(alpha: int, mu: int) -> int:
    """kappa^0 * phi_{Omega alpha}(mu), i.e. fv(alpha, 0, mu) as a kappa-code."""
    v = ord_ext.fv_veblen([ord_ext.decode_coeff(alpha), ord_ext.CZERO, ord_ext.decode_coeff(mu)])
    return KK.encode(ord_ext.ext_monomial(ord_ext.KAPPA, ord_ext.CZERO, v))


def _lpiece(a: int, alpha: int) -> int:
    """lambda^(stride + lambda^(k-2) alpha) for a term a of type k >= 2."""
    f = ord_ext.canonical_seq(LAMBDA.decode(a))
    if f.scheme is not ord_ext.Scheme.LAMBDA_TYPE or f.level < 2:
        raise ValueError("not a higher-type term")
    g = ord_ext.decode_coeff(alpha)
    exp = ord_ext.ext_add(f.stride, ord_ext.ext_monomial(ord_ext.LEXP, f.level - 2, g))
    return LAMBDA.encode(ord_ext.ext_monomial(ord_ext.LAMBDA, exp, ord_ext.CONE))


def _cprec(m: int, n: int) -> bool:
    try:
        return ord_ext.fv_compare(ord_ext.decode_coeff(m), ord_ext.decode_coeff(n)) is ord_core.LT
    except ord_core.NotationError:
        return False


def register_notation_symbols() -> None:
    for sys in (G0, KK, LAMBDA):
        _reg_system(sys)
    register_fn("add@g0", _g0_fn(ord_core.add))
    register_fn("mul@g0", _g0_fn(ord_core.mul))
    register_fn("wpow@g0", _g0_fn(ord_core.omega_pow))
    register_fn("phi@g0", _g0_fn(ord_core.veblen))
    register_fn("add@kk", _ext_add(KK))
    register_fn("add@lambda", _ext_add(LAMBDA))
    register_fn("kwmul@kk", _kwmul)
    register_fn("fvomega@kk", _fvomega)
    register_fn("lpiece@lambda", _lpiece)
    register_pred("cprec", _cprec)
    for sys in (KK, LAMBDA):
        register_fn(f"hh@{sys.name}", lambda n, s=sys: ext_h(s, n))
        register_pred(f"typ0@{sys.name}", lambda n, s=sys: ext_type(s, n) == 0)
        register_pred(f"typ@{sys.name}", lambda n, k, s=sys: ext_type(s, n) == k)
        register_pred(f"seq@{sys.name}", lambda x, n, s=sys: ext_seq(s, x, n))


register_notation_symbols()


# ---------------------------------------------------------------------------
# schemata

def build_prog(a: Lam, system: str = "g0", order: str | None = None) -> Formula:
    """(forall b)[(forall c < b) A(c) -> A(b)]."""
    order = order or f"prec@{system}"
    avoid = _vars(a)
    b = _fresh(avoid, 1)
    c = _fresh(avoid, 1)
    inner = All(c, Imp(pred(order, Var(c), Var(b)), a.at(Var(c))))
    return All(b, Imp(inner, a.at(Var(b))))


def build_ti(a: Lam, bound: Term, system: str = "g0") -> Formula:
    """Prog(A) -> (forall b < bound) A(b)."""
    avoid = _vars(a, bound)
    b = _fresh(avoid, 1)
    return Imp(build_prog(a, system), All(b, Imp(prec(Var(b), bound, system), a.at(Var(b)))))


def build_j(a: Lam, t: Term, system: str = "g0") -> Formula:
    """(forall y)[(forall x < y) A(x) -> (forall x < y + t) A(x)]."""
    avoid = _vars(a, t)
    y = _fresh(avoid, 1)
    x = _fresh(avoid, 1)
    below = All(x, Imp(prec(Var(x), Var(y), system), a.at(Var(x))))
    below_t = All(x, Imp(prec(Var(x), n_add(Var(y), t, system), system), a.at(Var(x))))
    return All(y, Imp(below, below_t))


def build_jk(k: int, lo: Term, hi: Term, a: Lam, c: Term, system: str = "lambda") -> Formula:
    """Bounded k-th order jumpability J^k_{lo,hi}(A, c)."""
    if k < 1:
        raise ValueError("J^k needs k >= 1")
    avoid = _vars(a, lo, hi, c)
    x = _fresh(avoid, 1)
    rng = And(preceq(lo, Var(x), system), prec(Var(x), hi, system))
    step = n_add(Var(x), c, system)
    if k == 1:
        return All(x, Imp(rng, Imp(a.at(Var(x)), a.at(step))))
    return All(x, Imp(rng, Imp(build_jk(k - 1, lo, hi, a, Var(x), system),
                               build_jk(k - 1, lo, hi, a, step, system))))


def build_nos(a: Lam) -> Formula:
    """(forall n)(A(n) or not A(n)) -> [(forall n) A(n) or (exists n) not A(n)]."""
    n = _fresh(_vars(a), 1)
    an = a.at(Var(n))
    return Imp(All(n, Or(an, Not(an))), Or(All(n, an), Ex(n, Not(an))))


def _rd(level: int, system: str, idx: Term, z: Term) -> Formula:
    return pred(f"rd@{system}.{level}", idx, z)


def build_b(a: Term, b: Term, m: Term, level: int = 1) -> Formula:
    """B_{a,b}(m) over the g0 system, T-index w^a * b."""
    avoid = _vars(a, b, m)
    z = _fresh(avoid, 1)
    idx = n_mul(n_wpow(a), b)
    ta, tm = 90, 91
    hole = hole_lam(0)
    body = Imp(build_prog(hole), build_j(hole, n_phi(Var(ta), Var(tm))))
    q = Quote(body, ((ta, a), (tm, m)), ((0, Var(z)),))
    t_at = Rel(RelSym("TA", level, idx, ""), q)
    return All(z, Imp(And(_rd(level, "g0", idx, Var(z)), pred("bd", Var(z))), t_at))


def build_c(a: Term, n: int, level: int = 1) -> Formula:
    """C(a): (forall b)[0 < b < a_n -> T_{a_n}(<Prog_m B_{a,b}(m)>)]."""
    an = Num(G0.encode(ord_core.gamma(n)))
    avoid = _vars(a)
    b = _fresh(avoid, 1)
    ta, tb, tm = 92, 93, 94
    prog_b = build_prog(Lam(tm, build_b(Var(ta), Var(tb), Var(tm), level)))
    q = Quote(prog_b, ((ta, a), (tb, Var(b))), ())
    t_at = Rel(RelSym("TA", level, an, ""), q)
    bounds = And(prec(Num(0), Var(b)), prec(Var(b), an))
    return All(b, Imp(bounds, t_at))


def build_b_kappa(alpha: Term, b: Term, mu: Term, level: int = 1) -> Formula:
    """B_{alpha,b}(mu) with T-index (kappa omega)^alpha b and jump phi_{Omega alpha}(mu)."""
    avoid = _vars(alpha, b, mu)
    z = _fresh(avoid, 1)
    idx = fn("kwmul@kk", alpha, b)
    ta, tm = 90, 91
    hole = hole_lam(0)
    body = Imp(build_prog(hole, "kk"), build_j(hole, fn("fvomega@kk", Var(ta), Var(tm)), "kk"))
    q = Quote(body, ((ta, alpha), (tm, mu)), ((0, Var(z)),))
    t_at = Rel(RelSym("TA", level, idx, ""), q)
    return All(z, Imp(And(_rd(level, "kk", idx, Var(z)), pred("bd", Var(z))), t_at))


def build_c_kappa(alpha: Term, n: int, level: int = 1) -> Formula:
    """C(alpha) of the kappa lemma, with top level kappa^{delta_n}."""
    top = Num(KK.encode(ord_ext.ext_monomial(ord_ext.KAPPA, ord_ext.delta(n), ord_ext.CONE)))
    avoid = _vars(alpha)
    b = _fresh(avoid, 1)
    ta, tb, tm = 92, 93, 94
    prog_b = build_prog(Lam(tm, build_b_kappa(Var(ta), Var(tb), Var(tm), level)), order="cprec")
    q = Quote(prog_b, ((ta, alpha), (tb, Var(b))), ())
    acc = Rel(RelSym("AccA", level, top, ""), fn("kwmul@kk", alpha, Var(b)))
    hyp = conj(prec(Num(0), Var(b), "kk"), prec(Var(b), top, "kk"), pred("typ0@kk", Var(b)), acc)
    return All(b, Imp(hyp, Rel(RelSym("TA", level, top, ""), q)))


def build_lemma_schemata(n: int, a: Term, b: Term | None = None, m: Term | None = None,
                         system: str = "g0", level: int = 1) -> Formula:
    """B_{a,b}(m) when b and m are given, otherwise C(a)."""
    if system == "g0":
        return build_c(a, n, level) if b is None else build_b(a, b, m if m is not None else Var(0), level)
    if system == "kk":
        return build_c_kappa(a, n, level) if b is None else build_b_kappa(a, b, m if m is not None else Var(0), level)
    raise ValueError(f"no lemma schemata for system {system!r}")
