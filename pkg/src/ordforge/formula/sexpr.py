"""Prefix S-expression text format for terms and formulas, plus a pretty printer.

    term    := v3 | 12 | (S t) | (+ t t) | (* t t) | (fn NAME t*)
             | (quote F ((i t)*) ((k t)*))
    formula := bot | (= t t) | (in t j) | (pred NAME t*)
             | (T@L t) | (Acc@L t) | (TA@L idx t) | (AccA@L idx t) | (Plain@L NAME t)
             | (and F F) | (or F F) | (imp F F) | (iff F F) | (not F)
             | (all i F) | (ex i F) | (allS j F) | (exS j F) | (hole k t)

Names containing parentheses or spaces are written in double quotes.
"""

from __future__ import annotations

import re

from .syntax import (
    BOT, All, AllS, And, Bot, Eq, Ex, ExS, Fn, Formula, HoleApp, Iff, Imp, Mem, Node, Not,
    Num, Or, Plus, Pred, Quote, Rel, RelSym, Succ, Term, Times, Var,
)

_BIN_F = {And: "and", Or: "or", Imp: "imp", Iff: "iff"}
_F_BIN = {v: k for k, v in _BIN_F.items()}
_Q = {All: "all", Ex: "ex", AllS: "allS", ExS: "exS"}
_QF = {v: k for k, v in _Q.items()}
_PLAIN_ATOM = re.compile(r"[^\s()\"]+\Z")


class SexprError(ValueError):
    pass


def _atom(s: str) -> str:
    return s if _PLAIN_ATOM.match(s) else '"' + s.replace('"', '\\"') + '"'


def to_sexpr(n: Node) -> str:
    if isinstance(n, Var):
        return f"v{n.i}"
    if isinstance(n, Num):
        return str(n.n)
    if isinstance(n, Succ):
        return f"(S {to_sexpr(n.t)})"
    if isinstance(n, Plus):
        return f"(+ {to_sexpr(n.a)} {to_sexpr(n.b)})"
    if isinstance(n, Times):
        return f"(* {to_sexpr(n.a)} {to_sexpr(n.b)})"
    if isinstance(n, (Fn, Pred)):
        head = "fn" if isinstance(n, Fn) else "pred"
        return "(" + " ".join([head, _atom(n.name)] + [to_sexpr(a) for a in n.args]) + ")"
    if isinstance(n, Quote):
        nums = " ".join(f"({i} {to_sexpr(t)})" for i, t in n.nums)
        forms = " ".join(f"({k} {to_sexpr(t)})" for k, t in n.forms)
        return f"(quote {to_sexpr(n.template)} ({nums}) ({forms}))"
    if isinstance(n, RelSym):
        return f"{n.kind}@{n.level}"
    if isinstance(n, Bot):
        return "bot"
    if isinstance(n, Eq):
        return f"(= {to_sexpr(n.a)} {to_sexpr(n.b)})"
    if isinstance(n, Mem):
        return f"(in {to_sexpr(n.t)} {n.j})"
    if isinstance(n, Rel):
        s = n.sym
        parts = [f"{s.kind}@{s.level}"]
        if s.kind == "Plain":
            parts.append(_atom(s.name))
        elif s.index is not None:
            parts.append(to_sexpr(s.index))
        parts.append(to_sexpr(n.t))
        return "(" + " ".join(parts) + ")"
    if type(n) in _BIN_F:
        return f"({_BIN_F[type(n)]} {to_sexpr(n.a)} {to_sexpr(n.b)})"
    if isinstance(n, Not):
        return f"(not {to_sexpr(n.a)})"
    if isinstance(n, (All, Ex)):
        return f"({_Q[type(n)]} {n.i} {to_sexpr(n.a)})"
    if isinstance(n, (AllS, ExS)):
        return f"({_Q[type(n)]} {n.j} {to_sexpr(n.a)})"
    if isinstance(n, HoleApp):
        return f"(hole {n.k} {to_sexpr(n.t)})"
    raise TypeError(f"not a syntax node: {n!r}")


_TOKEN = re.compile(r'\s*(?:(\()|(\))|"((?:[^"\\]|\\.)*)"|([^\s()"]+))')


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise SexprError(f"bad character at position {pos}")
        if m.group(1):
            out.append("(")
        elif m.group(2):
            out.append(")")
        elif m.group(3) is not None:
            out.append(("str", m.group(3).replace('\\"', '"')))
        else:
            out.append(m.group(4))
        pos = m.end()
    return out


def _read(tokens: list, i: int):
    if i >= len(tokens):
        raise SexprError("unexpected end of input")
    tok = tokens[i]
    if tok == "(":
        items = []
        i += 1
        while True:
            if i >= len(tokens):
                raise SexprError("missing ')'")
            if tokens[i] == ")":
                return items, i + 1
            item, i = _read(tokens, i)
            items.append(item)
    if tok == ")":
        raise SexprError("unexpected ')'")
    return tok, i + 1


def read_sexpr(text: str):
    tokens = _tokenize(text)
    tree, i = _read(tokens, 0)
    if i != len(tokens):
        raise SexprError("trailing input")
    return tree


def _name(x) -> str:
    if isinstance(x, tuple):
        return x[1]
    if isinstance(x, str):
        return x
    raise SexprError(f"expected a name, got {x!r}")


def _int(x) -> int:
    if isinstance(x, str) and x.isdigit():
        return int(x)
    raise SexprError(f"expected a natural number, got {x!r}")


def term_from_tree(x) -> Term:
    if isinstance(x, str):
        if x.isdigit():
            return Num(int(x))
        if x[0] == "v" and x[1:].isdigit():
            return Var(int(x[1:]))
        raise SexprError(f"bad term atom {x!r}")
    if not isinstance(x, list) or not x:
        raise SexprError(f"bad term {x!r}")
    head = x[0]
    if head == "S" and len(x) == 2:
        return Succ(term_from_tree(x[1]))
    if head in ("+", "*") and len(x) == 3:
        cls = Plus if head == "+" else Times
        return cls(term_from_tree(x[1]), term_from_tree(x[2]))
    if head == "fn" and len(x) >= 2:
        return Fn(_name(x[1]), tuple(term_from_tree(a) for a in x[2:]))
    if head == "quote" and len(x) == 4:
        nums = tuple((_int(p[0]), term_from_tree(p[1])) for p in x[2])
        forms = tuple((_int(p[0]), term_from_tree(p[1])) for p in x[3])
        return Quote(formula_from_tree(x[1]), nums, forms)
    raise SexprError(f"bad term {x!r}")


def formula_from_tree(x) -> Formula:
    if x == "bot":
        return BOT
    if not isinstance(x, list) or not x or not isinstance(x[0], str):
        raise SexprError(f"bad formula {x!r}")
    head = x[0]
    if head == "=" and len(x) == 3:
        return Eq(term_from_tree(x[1]), term_from_tree(x[2]))
    if head == "in" and len(x) == 3:
        return Mem(term_from_tree(x[1]), _int(x[2]))
    if head == "pred" and len(x) >= 2:
        return Pred(_name(x[1]), tuple(term_from_tree(a) for a in x[2:]))
    if head in _F_BIN and len(x) == 3:
        return _F_BIN[head](formula_from_tree(x[1]), formula_from_tree(x[2]))
    if head == "not" and len(x) == 2:
        return Not(formula_from_tree(x[1]))
    if head in _QF and len(x) == 3:
        return _QF[head](_int(x[1]), formula_from_tree(x[2]))
    if head == "hole" and len(x) == 3:
        return HoleApp(_int(x[1]), term_from_tree(x[2]))
    if "@" in head:
        kind, _, level = head.partition("@")
        lv = _int(level)
        if kind in ("T", "Acc") and len(x) == 2:
            return Rel(RelSym(kind, lv, None, ""), term_from_tree(x[1]))
        if kind in ("TA", "AccA") and len(x) == 3:
            return Rel(RelSym(kind, lv, term_from_tree(x[1]), ""), term_from_tree(x[2]))
        if kind == "Plain" and len(x) == 3:
            return Rel(RelSym(kind, lv, None, _name(x[1])), term_from_tree(x[2]))
    raise SexprError(f"bad formula {x!r}")


def parse_formula(text: str) -> Formula:
    return formula_from_tree(read_sexpr(text))


def parse_term(text: str) -> Term:
    return term_from_tree(read_sexpr(text))


# ---------------------------------------------------------------------------
# human-readable output

_OPS = {And: "&", Or: "|", Imp: "->", Iff: "<->"}


def _pt(t: Term) -> str:
    if isinstance(t, Var):
        return f"v{t.i}"
    if isinstance(t, Num):
        return str(t.n) if t.n < 10**12 else f"#{t.n.bit_length()}bits"
    if isinstance(t, Succ):
        return f"S({_pt(t.t)})"
    if isinstance(t, Plus):
        return f"({_pt(t.a)} + {_pt(t.b)})"
    if isinstance(t, Times):
        return f"({_pt(t.a)} * {_pt(t.b)})"
    if isinstance(t, Fn):
        return f"{t.name}(" + ", ".join(_pt(a) for a in t.args) + ")"
    subs = ", ".join(f"v{i}:={_pt(s)}" for i, s in t.nums)
    subs += "".join(f", [[{k}]]:={_pt(s)}" for k, s in t.forms)
    return "<" + pretty(t.template) + (f" | {subs}" if subs else "") + ">"


def _sym(s: RelSym) -> str:
    if s.kind == "Plain":
        return f"{s.name}@{s.level}"
    if s.index is None:
        return f"{s.kind}@{s.level}"
    return f"{'T' if s.kind == 'TA' else 'Acc'}@{s.level}[{_pt(s.index)}]"


def pretty(n: Node) -> str:
    if isinstance(n, Term):
        return _pt(n)
    if isinstance(n, Bot):
        return "bot"
    if isinstance(n, Eq):
        return f"{_pt(n.a)} = {_pt(n.b)}"
    if isinstance(n, Mem):
        return f"{_pt(n.t)} in X{n.j}"
    if isinstance(n, Rel):
        return f"{_sym(n.sym)}({_pt(n.t)})"
    if isinstance(n, Pred):
        return f"{n.name}(" + ", ".join(_pt(a) for a in n.args) + ")"
    if type(n) in _OPS:
        return f"({pretty(n.a)} {_OPS[type(n)]} {pretty(n.b)})"
    if isinstance(n, Not):
        return f"~{pretty(n.a)}"
    if isinstance(n, All):
        return f"forall v{n.i}. {pretty(n.a)}"
    if isinstance(n, Ex):
        return f"exists v{n.i}. {pretty(n.a)}"
    if isinstance(n, AllS):
        return f"forall X{n.j}. {pretty(n.a)}"
    if isinstance(n, ExS):
        return f"exists X{n.j}. {pretty(n.a)}"
    if isinstance(n, HoleApp):
        return f"[[{n.k}]]({_pt(n.t)})"
    if isinstance(n, RelSym):
        return _sym(n)
    raise TypeError(f"not a syntax node: {n!r}")
