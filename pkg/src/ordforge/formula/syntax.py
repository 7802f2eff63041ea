"""Two-sorted arithmetic syntax with relation-symbol families.

Nodes are hash-consed: structurally equal nodes are the same object, so
equality is identity and dictionaries keyed by nodes are cheap.

Number variables are ``v_i`` and set variables ``X_j``.  A ``Quote`` term
denotes the Goedel number of its template after plugging numerals for the
listed variables (and, for ``[[z]]`` insertion, the formulas coded by the
listed terms at the ``HoleApp`` slots).  Variables inside a template are not
free in the enclosing formula.
"""

from __future__ import annotations

import functools
from typing import Iterable, Iterator, Union

from .functions import EvalError, eval_fn, eval_pred


class Node:
    __slots__ = ("__weakref__",)
    _fields: tuple[str, ...] = ()
    _table: dict = {}

    def __new__(cls, *args):
        key = (cls, *args)
        obj = Node._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            for f, v in zip(cls._fields, args):
                object.__setattr__(obj, f, v)
            Node._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), tuple(getattr(self, f) for f in self._fields))

    def __repr__(self) -> str:
        from .sexpr import to_sexpr
        return to_sexpr(self)

    def __str__(self) -> str:
        from .sexpr import pretty
        return pretty(self)


# ---------------------------------------------------------------------------
# terms

class Term(Node):
    __slots__ = ()


class Var(Term):
    __slots__ = ("i",)
    _fields = ("i",)


class Num(Term):
    __slots__ = ("n",)
    _fields = ("n",)


class Succ(Term):
    __slots__ = ("t",)
    _fields = ("t",)


class Plus(Term):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Times(Term):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Fn(Term):
    __slots__ = ("name", "args")
    _fields = ("name", "args")


class Quote(Term):
    """nums: ((i, term), ...); forms: ((k, term), ...)."""

    __slots__ = ("template", "nums", "forms")
    _fields = ("template", "nums", "forms")


class RelSym(Node):
    """Unary relation symbol: kind in T, Acc, TA (T_a), AccA (Acc_a), Plain."""

    __slots__ = ("kind", "level", "index", "name")
    _fields = ("kind", "level", "index", "name")


KINDS = ("T", "Acc", "TA", "AccA", "Plain")
INDEXED = ("TA", "AccA")


# ---------------------------------------------------------------------------
# formulas

class Formula(Node):
    __slots__ = ()


class Bot(Formula):
    __slots__ = ()


class Eq(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Mem(Formula):
    __slots__ = ("t", "j")
    _fields = ("t", "j")


class Rel(Formula):
    __slots__ = ("sym", "t")
    _fields = ("sym", "t")


class Pred(Formula):
    __slots__ = ("name", "args")
    _fields = ("name", "args")


class And(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Or(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Imp(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Iff(Formula):
    __slots__ = ("a", "b")
    _fields = ("a", "b")


class Not(Formula):
    __slots__ = ("a",)
    _fields = ("a",)


class All(Formula):
    __slots__ = ("i", "a")
    _fields = ("i", "a")


class Ex(Formula):
    __slots__ = ("i", "a")
    _fields = ("i", "a")


class AllS(Formula):
    __slots__ = ("j", "a")
    _fields = ("j", "a")


class ExS(Formula):
    __slots__ = ("j", "a")
    _fields = ("j", "a")


class HoleApp(Formula):
    """[[z_k]](t): slot for an inserted formula, only meaningful in templates."""

    __slots__ = ("k", "t")
    _fields = ("k", "t")


BOT = Bot()
BINARY = (And, Or, Imp, Iff)
NQUANT = (All, Ex)
SQUANT = (AllS, ExS)

AnyNode = Union[Term, Formula]


# ---------------------------------------------------------------------------
# constructors

def num(n: int) -> Num:
    return Num(n)


def v(i: int) -> Var:
    return Var(i)


def fn(name: str, *args: Term) -> Fn:
    return Fn(name, tuple(args))


def pred(name: str, *args: Term) -> Pred:
    return Pred(name, tuple(args))


def conj(*fs: Formula) -> Formula:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = And(f, out)
    return out


def imps(*fs: Formula) -> Formula:
    out = fs[-1]
    for f in reversed(fs[:-1]):
        out = Imp(f, out)
    return out


def forall(idx: Iterable[int], body: Formula) -> Formula:
    for i in reversed(list(idx)):
        body = All(i, body)
    return body


def exists(idx: Iterable[int], body: Formula) -> Formula:
    for i in reversed(list(idx)):
        body = Ex(i, body)
    return body


def rel(kind: str, level: int, t: Term, index: Term | None = None, name: str = "") -> Rel:
    return Rel(RelSym(kind, level, index, name), t)


def quote(template: Formula, vars_: Iterable[int] = (), forms: Iterable[tuple[int, Term]] = ()) -> Quote:
    """Quote with the listed variables numeral-substituted by themselves."""
    return Quote(template, tuple((i, Var(i)) for i in vars_), tuple(forms))


# ---------------------------------------------------------------------------
# traversal

def children(n: Node) -> tuple:
    if isinstance(n, (Var, Num, Bot)):
        return ()
    if isinstance(n, (Succ,)):
        return (n.t,)
    if isinstance(n, (Plus, Times, Eq) + BINARY):
        return (n.a, n.b)
    if isinstance(n, (Fn, Pred)):
        return n.args
    if isinstance(n, Quote):
        return tuple(t for _, t in n.nums) + tuple(t for _, t in n.forms)
    if isinstance(n, Mem):
        return (n.t,)
    if isinstance(n, Rel):
        return ((n.sym.index,) if n.sym.index is not None else ()) + (n.t,)
    if isinstance(n, Not):
        return (n.a,)
    if isinstance(n, NQUANT + SQUANT):
        return (n.a,)
    if isinstance(n, HoleApp):
        return (n.t,)
    raise TypeError(f"not a syntax node: {n!r}")


@functools.lru_cache(maxsize=1 << 16)
def free_num_vars(n: Node) -> frozenset[int]:
    if isinstance(n, Var):
        return frozenset((n.i,))
    if isinstance(n, NQUANT):
        return free_num_vars(n.a) - {n.i}
    out: frozenset[int] = frozenset()
    for c in children(n):
        out |= free_num_vars(c)
    return out


@functools.lru_cache(maxsize=1 << 16)
def free_set_vars(n: Node) -> frozenset[int]:
    if isinstance(n, Mem):
        return frozenset((n.j,)) | free_set_vars(n.t)
    if isinstance(n, SQUANT):
        return free_set_vars(n.a) - {n.j}
    out: frozenset[int] = frozenset()
    for c in children(n):
        out |= free_set_vars(c)
    return out


@functools.lru_cache(maxsize=1 << 16)
def num_vars_used(n: Node) -> frozenset[int]:
    """Free and bound number variables (quoted templates excluded)."""
    own = frozenset((n.i,)) if isinstance(n, (Var,) + NQUANT) else frozenset()
    for c in children(n):
        own |= num_vars_used(c)
    return own


def fresh_var(*nodes: Node, start: int = 0) -> int:
    used: set[int] = set()
    for n in nodes:
        used |= num_vars_used(n)
    i = start
    while i in used:
        i += 1
    return i


def relsyms(n: Node) -> Iterator[RelSym]:
    """Relation symbols used (not merely quoted) in n."""
    stack = [n]
    while stack:
        x = stack.pop()
        if isinstance(x, Rel):
            yield x.sym
        stack.extend(children(x))


def preds_and_fns(n: Node) -> Iterator[tuple[str, str]]:
    stack = [n]
    while stack:
        x = stack.pop()
        if isinstance(x, Fn):
            yield ("fn", x.name)
        elif isinstance(x, Pred):
            yield ("pred", x.name)
        stack.extend(children(x))


def size(n: Node) -> int:
    return 1 + sum(size(c) for c in children(n))


def has_holes(n: Node) -> bool:
    if isinstance(n, HoleApp):
        return True
    return any(has_holes(c) for c in children(n) if isinstance(c, Formula))


# ---------------------------------------------------------------------------
# substitution

class CaptureError(ValueError):
    pass


def _rebuild(n: Node, kids: list) -> Node:
    if isinstance(n, Succ):
        return Succ(kids[0])
    if isinstance(n, (Plus, Times, Eq) + BINARY):
        return type(n)(kids[0], kids[1])
    if isinstance(n, Fn):
        return Fn(n.name, tuple(kids))
    if isinstance(n, Pred):
        return Pred(n.name, tuple(kids))
    if isinstance(n, Quote):
        k = len(n.nums)
        nums = tuple((i, t) for (i, _), t in zip(n.nums, kids[:k]))
        forms = tuple((j, t) for (j, _), t in zip(n.forms, kids[k:]))
        return Quote(n.template, nums, forms)
    if isinstance(n, Mem):
        return Mem(kids[0], n.j)
    if isinstance(n, Rel):
        if n.sym.index is None:
            return Rel(n.sym, kids[0])
        s = n.sym
        return Rel(RelSym(s.kind, s.level, kids[0], s.name), kids[1])
    if isinstance(n, Not):
        return Not(kids[0])
    if isinstance(n, NQUANT):
        return type(n)(n.i, kids[0])
    if isinstance(n, SQUANT):
        return type(n)(n.j, kids[0])
    if isinstance(n, HoleApp):
        return HoleApp(n.k, kids[0])
    raise TypeError(f"cannot rebuild {n!r}")


def subst(n: Node, i: int, t: Term) -> Node:
    """Replace free v_i by t; raises CaptureError if a binder would capture t."""
    tv = free_num_vars(t)
    return _subst(n, i, t, tv)


def _subst(n: Node, i: int, t: Term, tv: frozenset[int]) -> Node:
    if i not in free_num_vars(n):
        return n
    if isinstance(n, Var):
        return t
    if isinstance(n, NQUANT):
        if n.i in tv:
            raise CaptureError(f"v{n.i} would capture a variable of the substituted term")
        return type(n)(n.i, _subst(n.a, i, t, tv))
    return _rebuild(n, [_subst(c, i, t, tv) for c in children(n)])


def subst_many(n: Node, mapping: dict[int, Term]) -> Node:
    """Simultaneous substitution (capture raises)."""
    if not mapping:
        return n
    keys = set(mapping)
    tv: frozenset[int] = frozenset()
    for t in mapping.values():
        tv |= free_num_vars(t)

    def go(x: Node, active: frozenset[int]) -> Node:
        if not (free_num_vars(x) & active):
            return x
        if isinstance(x, Var):
            return mapping[x.i]
        if isinstance(x, NQUANT):
            inner = active - {x.i}
            if x.i in tv and (free_num_vars(x.a) & inner):
                raise CaptureError(f"v{x.i} would capture")
            return type(x)(x.i, go(x.a, inner))
        return _rebuild(x, [go(c, active) for c in children(x)])

    return go(n, frozenset(keys))


def subst_set(n: Node, j: int, k: int) -> Node:
    """Rename free X_j to X_k."""
    if j == k or j not in free_set_vars(n):
        return n
    if isinstance(n, Mem):
        return Mem(subst_set(n.t, j, k), k if n.j == j else n.j)
    if isinstance(n, SQUANT):
        if n.j == k:
            raise CaptureError(f"X{k} would be captured")
        return type(n)(n.j, subst_set(n.a, j, k))
    return _rebuild(n, [subst_set(c, j, k) for c in children(n)])


def rename_bound(f: Formula, avoid: frozenset[int]) -> Formula:
    """Alpha-rename bound number variables of f that occur in avoid."""
    if isinstance(f, NQUANT) and f.i in avoid:
        new = fresh_var(f, start=max(avoid | num_vars_used(f)) + 1)
        body = subst(rename_bound(f.a, avoid), f.i, Var(new))
        return type(f)(new, body)
    if isinstance(f, Formula) and not isinstance(f, (Eq, Mem, Rel, Pred, Bot, HoleApp)):
        return _rebuild(f, [rename_bound(c, avoid) if isinstance(c, Formula) else c for c in children(f)])
    return f


def match_subst(a: Node, i: int, b: Node) -> tuple[bool, Term | None]:
    """Find t with a[t/v_i] == b structurally (t None when v_i is absent)."""
    found: list[Term] = []

    def go(x: Node, y: Node, bound: frozenset[int]) -> bool:
        if isinstance(x, Var) and x.i == i and i not in bound:
            if free_num_vars(y) & bound:
                return False
            if found:
                return found[0] is y
            found.append(y)
            return True
        if i not in free_num_vars(x) or i in bound:
            return x is y
        if type(x) is not type(y):
            return False
        if isinstance(x, NQUANT):
            return x.i == y.i and go(x.a, y.a, bound | {x.i})
        if isinstance(x, SQUANT):
            return x.j == y.j and go(x.a, y.a, bound)
        if isinstance(x, (Fn, Pred)) and (x.name != y.name or len(x.args) != len(y.args)):
            return False
        if isinstance(x, Mem) and x.j != y.j:
            return False
        if isinstance(x, HoleApp) and x.k != y.k:
            return False
        if isinstance(x, Rel):
            sx, sy = x.sym, y.sym
            if (sx.kind, sx.level, sx.name) != (sy.kind, sy.level, sy.name):
                return False
            if (sx.index is None) != (sy.index is None):
                return False
        if isinstance(x, Quote):
            if x.template is not y.template or [k for k, _ in x.nums] != [k for k, _ in y.nums] \
                    or [k for k, _ in x.forms] != [k for k, _ in y.forms]:
                return False
        cx, cy = children(x), children(y)
        return len(cx) == len(cy) and all(go(p, q, bound) for p, q in zip(cx, cy))

    ok = go(a, b, frozenset())
    return ok, (found[0] if found else None)


# ---------------------------------------------------------------------------
# evaluation of closed terms and quotation

def term_value(t: Term) -> int | None:
    """Value of a closed term, None if open or not evaluable."""
    r = normalize(t)
    return r.n if isinstance(r, Num) else None


def fill_holes(template: Formula, forms: dict[int, Formula]) -> Formula:
    """Insert formulas for HoleApp(k, t): the inserted formula's v0 becomes t."""
    if not has_holes(template):
        return template
    if isinstance(template, HoleApp):
        body = forms[template.k]
        body = rename_bound(body, free_num_vars(template.t))
        return subst(body, 0, template.t)
    return _rebuild(template, [fill_holes(c, forms) if isinstance(c, Formula) else c
                               for c in children(template)])


def quote_value(q: Quote) -> int | None:
    from .godel import decode, encode

    vals = {}
    for i, t in q.nums:
        x = term_value(t)
        if x is None:
            return None
        vals[i] = Num(x)
    forms = {}
    for k, t in q.forms:
        z = term_value(t)
        if z is None:
            return None
        f = decode(z)
        if f is None:
            return 0
        forms[k] = f
    try:
        body = fill_holes(q.template, forms)
        body = subst_many(body, vals)
    except (CaptureError, KeyError):
        return 0
    return encode(body)


@functools.lru_cache(maxsize=1 << 16)
def normalize(n: Node) -> Node:
    """Evaluate every closed evaluable subterm to a numeral."""
    if isinstance(n, (Var, Num, Bot)):
        return n
    kids = [normalize(c) for c in children(n)]
    if isinstance(n, Term) and all(isinstance(k, Num) for k in kids):
        vals = tuple(k.n for k in kids)
        if isinstance(n, Succ):
            return Num(vals[0] + 1)
        if isinstance(n, Plus):
            return Num(vals[0] + vals[1])
        if isinstance(n, Times):
            return Num(vals[0] * vals[1])
        if isinstance(n, Fn):
            try:
                return Num(eval_fn(n.name, vals))
            except EvalError:
                pass
        if isinstance(n, Quote):
            x = quote_value(Quote(n.template, tuple((i, k) for (i, _), k in zip(n.nums, kids)),
                                  tuple((j, k) for (j, _), k in zip(n.forms, kids[len(n.nums):]))))
            if x is not None:
                return Num(x)
    return _rebuild(n, kids)


def closed_atom_value(f: Formula) -> bool | None:
    """Truth value of a closed decidable atom (equation or predicate)."""
    f = normalize(f)
    if isinstance(f, Eq) and isinstance(f.a, Num) and isinstance(f.b, Num):
        return f.a.n == f.b.n
    if isinstance(f, Pred) and all(isinstance(a, Num) for a in f.args):
        try:
            return eval_pred(f.name, tuple(a.n for a in f.args))
        except EvalError:
            return None
    return None


def sym_index_value(s: RelSym) -> int | None:
    if s.index is None:
        return None
    return term_value(s.index)
