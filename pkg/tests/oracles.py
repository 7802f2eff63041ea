"""Independent reference implementations used by the tests.

None of these call into the code they check: orders are recomputed on plain
tuples, substitution is done on raw S-expression trees, and (kappa*omega)^alpha
is unfolded from the definition of ordinal multiplication.
"""

from __future__ import annotations

import random
from itertools import zip_longest

from ordforge import ord_core, ord_ext
from ordforge.formula.sexpr import formula_from_tree, read_sexpr
from ordforge.formula.syntax import (
    BOT, All, AllS, And, Eq, Ex, ExS, Formula, Iff, Imp, Mem, Not, Num, Or, Plus, Rel, RelSym,
    Succ, Times, Var,
)
from ordforge.proof_kernel import Gated, Infer, LogicalAxiom, NonLogicalAxiom, ProofNode


# ---------------------------------------------------------------------------
# binary Veblen order on nested tuples

def as_tuple(a: ord_core.OrdTerm) -> tuple:
    return tuple((as_tuple(p.index), as_tuple(p.arg)) for p in a.summands)


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


def _below_omega_omega(t: tuple) -> list[int] | None:
    """Exponents of t when t < w^w (every summand w^n with n finite), else None."""
    out = []
    for idx, arg in t:
        if idx != ():
            return None
        n = 0
        for p in arg:
            if p != ((), ()):
                return None
            n += 1
        out.append(n)
    return out


def int_tuple(exps: list[int]) -> tuple[int, ...]:
    """w^{e1} + ... + w^{ek} as its coefficient vector (c_top, ..., c_0)."""
    if not exps:
        return ()
    top = max(exps)
    return tuple(exps.count(e) for e in range(top, -1, -1))


def _cmp_int_tuples(x: tuple[int, ...], y: tuple[int, ...]) -> int:
    if len(x) != len(y):
        return _sign(len(x) - len(y))
    for a, b in zip(x, y):
        if a != b:
            return _sign(a - b)
    return 0


def oracle_cmp(x: tuple, y: tuple) -> int:
    ex, ey = _below_omega_omega(x), _below_omega_omega(y)
    if ex is not None and ey is not None:
        return _cmp_int_tuples(int_tuple(ex), int_tuple(ey))
    for p, q in zip_longest(x, y):
        if p is None:
            return -1
        if q is None:
            return 1
        c = _pcmp(p, q)
        if c:
            return c
    return 0


def _pcmp(p, q) -> int:
    (a, b), (c, d) = p, q
    i = oracle_cmp(a, c)
    if i == 0:
        return oracle_cmp(b, d)
    if i < 0:
        # phi_a(b) vs phi_c(d), a < c: compare b against the whole of phi_c(d)
        return -1 if oracle_cmp(b, (q,)) < 0 else 1
    return -1 if oracle_cmp((p,), d) < 0 else 1


# ---------------------------------------------------------------------------
# (kappa*omega)^alpha by unfolding

def kappa_omega_unfold(alpha: ord_ext.CoeffTerm) -> ord_ext.ExtTerm:
    """(k*w)^alpha for alpha = lam + n with lam zero or a limit.

    For limit lam, (k*w)^b lies in [k^b, k^(b+1)) for b < lam, so the sup is
    k^lam.  Each further factor k*w maps k^x * c to k^(x+1) * w, because
    c * k = k for 0 < c < k.
    """
    lam, n = ord_ext.split_finite(alpha)
    x, coeff = lam, ord_ext.CONE
    for _ in range(n):
        x = ord_ext.cadd(x, ord_ext.CONE)
        coeff = ord_ext.COMEGA
    return ord_ext.ext_monomial(ord_ext.KAPPA, x, coeff)


# ---------------------------------------------------------------------------
# random formulas and tree-level substitution

REL_T = RelSym("T", 1, None, "")


def random_term(rng: random.Random, depth: int, nvars: int = 4):
    r = rng.random()
    if depth <= 0 or r < 0.35:
        return Var(rng.randrange(nvars)) if rng.random() < 0.6 else Num(rng.randrange(5))
    if r < 0.6:
        return Succ(random_term(rng, depth - 1, nvars))
    cls = Plus if r < 0.8 else Times
    return cls(random_term(rng, depth - 1, nvars), random_term(rng, depth - 1, nvars))


def random_formula(rng: random.Random, depth: int = 3, nvars: int = 4) -> Formula:
    r = rng.random()
    if depth <= 0 or r < 0.2:
        k = rng.randrange(4)
        if k == 0:
            return Eq(random_term(rng, 1, nvars), random_term(rng, 1, nvars))
        if k == 1:
            return Mem(random_term(rng, 1, nvars), rng.randrange(2))
        if k == 2:
            return Rel(REL_T, random_term(rng, 1, nvars))
        return BOT
    if r < 0.5:
        cls = rng.choice((And, Or, Imp, Iff))
        return cls(random_formula(rng, depth - 1, nvars), random_formula(rng, depth - 1, nvars))
    if r < 0.6:
        return Not(random_formula(rng, depth - 1, nvars))
    if r < 0.9:
        return rng.choice((All, Ex))(rng.randrange(nvars), random_formula(rng, depth - 1, nvars))
    return rng.choice((AllS, ExS))(rng.randrange(2), random_formula(rng, depth - 1, nvars))


_BINDERS = {"all", "ex"}


def tree_subst(x, i: int, k: int):
    """Replace free v_i by the numeral k in a raw S-expression tree."""
    if isinstance(x, str):
        return str(k) if x == f"v{i}" else x
    if x and x[0] in _BINDERS and x[1] == str(i):
        return x
    return [tree_subst(y, i, k) for y in x]


def tree_free_vars(x) -> set[int]:
    if isinstance(x, str):
        return {int(x[1:])} if x[0] == "v" and x[1:].isdigit() else set()
    if x and x[0] in _BINDERS:
        return tree_free_vars(x[2]) - {int(x[1])}
    if x and x[0] == "quote":
        return set().union(*(tree_free_vars(p[1]) for p in x[2] + x[3])) if x[2] or x[3] else set()
    out: set[int] = set()
    for y in x:
        out |= tree_free_vars(y)
    return out


def tree_has_free_set_var(x, bound: frozenset = frozenset()) -> bool:
    if isinstance(x, str):
        return False
    if x and x[0] == "in":
        return int(x[2]) not in bound
    if x and x[0] in ("allS", "exS"):
        return tree_has_free_set_var(x[2], bound | {int(x[1])})
    return any(tree_has_free_set_var(y, bound) for y in x)


def oracle_subst(sexpr: str, i: int, k: int) -> Formula:
    return formula_from_tree(tree_subst(read_sexpr(sexpr), i, k))


def oracle_close(sexpr: str, i: int) -> Formula:
    return formula_from_tree(["all", str(i), read_sexpr(sexpr)])


def oracle_bicond(sexpr: str, a: int, level: int, code_of) -> Formula | None:
    tree = read_sexpr(sexpr)
    if tree_has_free_set_var(tree):
        return None
    fv = sorted(tree_free_vars(tree))
    if fv:
        arg = ["quote", tree, [[str(i), f"v{i}"] for i in fv], []]
    else:
        arg = str(code_of(formula_from_tree(tree)))
    return formula_from_tree(["iff", tree, [f"TA@{level}", str(a), arg]])


# ---------------------------------------------------------------------------
# proof mutation

def _nodes(p: ProofNode, path=()):
    yield path, p
    for i, k in enumerate(p.children):
        yield from _nodes(k, path + (i,))


def _replace(p: ProofNode, path: tuple[int, ...], new: ProofNode) -> ProofNode:
    if not path:
        return new
    kids = list(p.children)
    kids[path[0]] = _replace(kids[path[0]], path[1:], new)
    return ProofNode(p.conclusion, p.rule, tuple(kids))


def _bump(n: int, rng: random.Random) -> int:
    return max(0, n + rng.choice((-2, -1, 1, 2, 3, 17)))


def _mutate_formula(f: Formula, rng: random.Random) -> Formula:
    choice = rng.randrange(3)
    if choice == 0:
        return Not(f)
    if choice == 1:
        return And(f, f)
    return Imp(BOT, f) if not isinstance(f, Imp) else f.b


def mutate(p: ProofNode, rng: random.Random) -> tuple[ProofNode, ProofNode, str]:
    """One single-field change somewhere in p; returns (new root, new node, field)."""
    nodes = list(_nodes(p))
    path, n = rng.choice(nodes)
    r = n.rule
    fields = ["conclusion", "rule"] + (["children"] if n.children else [])
    what = rng.choice(fields)
    if what == "conclusion":
        new = ProofNode(_mutate_formula(n.conclusion, rng), r, n.children)
    elif what == "children":
        kids = list(n.children)
        if len(kids) > 1 and rng.random() < 0.5:
            kids.reverse()
        else:
            kids.pop(rng.randrange(len(kids)))
        new = ProofNode(n.conclusion, r, tuple(kids))
    else:
        if isinstance(r, LogicalAxiom):
            r2 = LogicalAxiom(r.schema, _bump(r.param, rng))
        elif isinstance(r, NonLogicalAxiom):
            r2 = NonLogicalAxiom(_bump(r.index, rng))
        elif isinstance(r, Infer):
            r2 = Infer(_bump(r.ded, rng))
        elif isinstance(r, Gated):
            r2 = Gated(_bump(r.a, rng), r.family, r.index)
        else:
            r2 = r
        new = ProofNode(n.conclusion, r2, n.children)
    return _replace(p, path, new), new, what


# ---------------------------------------------------------------------------
# proof re-check on codes

def recheck(p: ProofNode, t, open_hyps: bool = False) -> bool:
    """Re-license every node from the enumerations of t, up to evaluation.

    Axiom nodes are compared with ``ax_all``/``is_axiom`` on codes and rule
    nodes with the triple ``ded`` enumerates; the kernel's own pattern
    matching is not consulted.
    """
    from ordforge.formula import encode
    from ordforge.formula.syntax import normalize
    from ordforge.proof_kernel import Hyp

    seen: dict[int, bool] = {}

    def same(x, y) -> bool:
        return normalize(x) is normalize(y)

    def go(n: ProofNode) -> bool:
        if id(n) in seen:
            return seen[id(n)]
        c, r, kids = n.conclusion, n.rule, n.children
        if not t.in_language(c):
            ok = False
        elif isinstance(r, Hyp):
            ok = open_hyps and not kids
        elif isinstance(r, LogicalAxiom):
            k = t.ax_all_index(c)
            ok = not kids and k is not None and k % 2 == 0
        elif isinstance(r, NonLogicalAxiom):
            ok = not kids and (t.is_axiom(encode(c)) or same(t.axiom_formula(r.index), c))
        elif isinstance(r, Infer):
            a, b, concl = t.ded_triple(r.ded)
            want = [a] if len(kids) == 1 and a is b else [a, b]
            ok = (len(kids) == len(want) and same(concl, c)
                  and all(same(k.conclusion, w) for k, w in zip(kids, want)))
        elif isinstance(r, Gated):
            g = normalize(kids[0].conclusion) if len(kids) == 1 else None
            ok = isinstance(g, Rel) and g.sym.kind == "Acc" and isinstance(g.t, Num) and g.t.n == r.a
            if ok:
                th = t
                while th is not None and th.acc_symbol() is not g.sym:
                    th = th.base
                ok = th is not None and th.match_gated(r.a, c) is not None
        else:
            ok = False
        ok = ok and all(go(k) for k in kids)
        seen[id(n)] = ok
        return ok

    return go(p)
