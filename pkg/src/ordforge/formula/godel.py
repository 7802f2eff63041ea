"""Goedel numbering: constructor tag paired with a payload.

Every code is ``pair2(tag, payload)``; formula tag 0 with payload 0 is the
absurdity constant, so ``decode(0)`` is ``bot``.  Decoding is partial: a
number is a formula code iff decoding succeeds and re-encoding reproduces it.
"""

from __future__ import annotations

import functools
import re

from ..pairing import pair, pair2, pair_list, unpair, unpair2, unpair_list
from .syntax import (
    BOT, All, And, AllS, Bot, Eq, Ex, ExS, Fn, Formula, HoleApp, Iff, Imp, KINDS, Mem, Node, Not,
    Num, Or, Plus, Pred, Quote, Rel, RelSym, Succ, Term, Times, Var,
)

TERM_TAGS = {Var: 0, Num: 1, Succ: 2, Plus: 3, Times: 4, Fn: 5, Quote: 6}
FORMULA_TAGS = {
    Bot: 0, Eq: 1, Mem: 2, Rel: 3, Pred: 4, And: 5, Or: 6, Imp: 7, Not: 8, Iff: 9,
    All: 10, Ex: 11, AllS: 12, ExS: 13, HoleApp: 14,
}
_TERM_BY_TAG = {v: k for k, v in TERM_TAGS.items()}
_FORMULA_BY_TAG = {v: k for k, v in FORMULA_TAGS.items()}

NUMBERING_TABLE = [
    ("term", "v_i", 0, "i"),
    ("term", "numeral n", 1, "n"),
    ("term", "S t", 2, "code(t)"),
    ("term", "t + s", 3, "<code(t), code(s)>"),
    ("term", "t * s", 4, "<code(t), code(s)>"),
    ("term", "f(t1..tk)", 5, "<name(f), list(code(t1)..code(tk))>"),
    ("term", "quote", 6, "<code(A), list(<i, code(t)>..), list(<k, code(t)>..)>"),
    ("formula", "bot", 0, "0"),
    ("formula", "t = s", 1, "<code(t), code(s)>"),
    ("formula", "t in X_j", 2, "<code(t), j>"),
    ("formula", "R(t)", 3, "<sym(R), code(t)>"),
    ("formula", "P(t1..tk)", 4, "<name(P), list(code(t1)..code(tk))>"),
    ("formula", "A and B", 5, "<code(A), code(B)>"),
    ("formula", "A or B", 6, "<code(A), code(B)>"),
    ("formula", "A -> B", 7, "<code(A), code(B)>"),
    ("formula", "not A", 8, "code(A)"),
    ("formula", "A <-> B", 9, "<code(A), code(B)>"),
    ("formula", "forall v_i A", 10, "<i, code(A)>"),
    ("formula", "exists v_i A", 11, "<i, code(A)>"),
    ("formula", "forall X_j A", 12, "<j, code(A)>"),
    ("formula", "exists X_j A", 13, "<j, code(A)>"),
    ("formula", "[[z_k]](t)", 14, "<k, code(t)>"),
    ("symbol", "R", None, "<kind, level, 0 or 1 + code(index), name>"),
    ("name", "identifier", None, "big-endian integer of the ASCII bytes"),
]
KIND_CODES = {k: i for i, k in enumerate(KINDS)}

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_@.\-^()]*\Z")


class NotAFormula(ValueError):
    pass


def encode_name(name: str) -> int:
    return int.from_bytes(name.encode("ascii"), "big")


def decode_name(n: int) -> str:
    if n <= 0:
        raise NotAFormula("empty name")
    raw = n.to_bytes((n.bit_length() + 7) // 8, "big")
    try:
        s = raw.decode("ascii")
    except UnicodeDecodeError as exc:
        raise NotAFormula("name is not ASCII") from exc
    if not _NAME_RE.match(s):
        raise NotAFormula(f"bad name {s!r}")
    return s


def encode_sym(s: RelSym) -> int:
    idx = 0 if s.index is None else 1 + encode_term(s.index)
    return pair([KIND_CODES[s.kind], s.level, idx, encode_name(s.name) if s.name else 0])


def decode_sym(n: int) -> RelSym:
    kind, level, idx, name = unpair(n, 4)
    if kind >= len(KINDS):
        raise NotAFormula("bad relation kind")
    return RelSym(KINDS[kind], level, None if idx == 0 else decode_term(idx - 1),
                  decode_name(name) if name else "")


@functools.lru_cache(maxsize=1 << 16)
def encode_term(t: Term) -> int:
    tag = TERM_TAGS[type(t)]
    if isinstance(t, Var):
        body = t.i
    elif isinstance(t, Num):
        body = t.n
    elif isinstance(t, Succ):
        body = encode_term(t.t)
    elif isinstance(t, (Plus, Times)):
        body = pair2(encode_term(t.a), encode_term(t.b))
    elif isinstance(t, Fn):
        body = pair2(encode_name(t.name), pair_list([encode_term(a) for a in t.args]))
    else:
        body = pair([
            encode(t.template),
            pair_list([pair2(i, encode_term(s)) for i, s in t.nums]),
            pair_list([pair2(k, encode_term(s)) for k, s in t.forms]),
        ])
    return pair2(tag, body)


@functools.lru_cache(maxsize=1 << 16)
def encode(f: Formula) -> int:
    if not isinstance(f, Formula):
        raise TypeError(f"not a formula: {f!r}")
    tag = FORMULA_TAGS[type(f)]
    if isinstance(f, Bot):
        body = 0
    elif isinstance(f, Eq):
        body = pair2(encode_term(f.a), encode_term(f.b))
    elif isinstance(f, Mem):
        body = pair2(encode_term(f.t), f.j)
    elif isinstance(f, Rel):
        body = pair2(encode_sym(f.sym), encode_term(f.t))
    elif isinstance(f, Pred):
        body = pair2(encode_name(f.name), pair_list([encode_term(a) for a in f.args]))
    elif isinstance(f, (And, Or, Imp, Iff)):
        body = pair2(encode(f.a), encode(f.b))
    elif isinstance(f, Not):
        body = encode(f.a)
    elif isinstance(f, (All, Ex)):
        body = pair2(f.i, encode(f.a))
    elif isinstance(f, (AllS, ExS)):
        body = pair2(f.j, encode(f.a))
    else:
        body = pair2(f.k, encode_term(f.t))
    return pair2(tag, body)


def decode_term(n: int) -> Term:
    tag, body = unpair2(n)
    cls = _TERM_BY_TAG.get(tag)
    if cls is None:
        raise NotAFormula(f"bad term tag {tag}")
    if cls is Var:
        return Var(body)
    if cls is Num:
        return Num(body)
    if cls is Succ:
        return Succ(decode_term(body))
    if cls in (Plus, Times):
        a, b = unpair2(body)
        return cls(decode_term(a), decode_term(b))
    if cls is Fn:
        name, args = unpair2(body)
        return Fn(decode_name(name), tuple(decode_term(a) for a in _list(args)))
    tpl, nums, forms = unpair(body, 3)
    template = _decode(tpl)
    nl = tuple((i, decode_term(s)) for i, s in map(unpair2, _list(nums)))
    fl = tuple((k, decode_term(s)) for k, s in map(unpair2, _list(forms)))
    return Quote(template, nl, fl)


def _list(n: int) -> tuple[int, ...]:
    try:
        return unpair_list(n)
    except ValueError as exc:
        raise NotAFormula(str(exc)) from exc


def _decode(n: int) -> Formula:
    tag, body = unpair2(n)
    cls = _FORMULA_BY_TAG.get(tag)
    if cls is None:
        raise NotAFormula(f"bad formula tag {tag}")
    if cls is Bot:
        if body:
            raise NotAFormula("bot carries no payload")
        return BOT
    if cls is Eq:
        a, b = unpair2(body)
        return Eq(decode_term(a), decode_term(b))
    if cls is Mem:
        t, j = unpair2(body)
        return Mem(decode_term(t), j)
    if cls is Rel:
        s, t = unpair2(body)
        return Rel(decode_sym(s), decode_term(t))
    if cls is Pred:
        name, args = unpair2(body)
        return Pred(decode_name(name), tuple(decode_term(a) for a in _list(args)))
    if cls in (And, Or, Imp, Iff):
        a, b = unpair2(body)
        return cls(_decode(a), _decode(b))
    if cls is Not:
        return Not(_decode(body))
    if cls in (All, Ex, AllS, ExS):
        i, a = unpair2(body)
        return cls(i, _decode(a))
    k, t = unpair2(body)
    return HoleApp(k, decode_term(t))


@functools.lru_cache(maxsize=1 << 14)
def decode(n: int) -> Formula | None:
    """Formula coded by n, or None when n is not a formula code."""
    if not isinstance(n, int) or n < 0:
        return None
    try:
        f = _decode(n)
    except (NotAFormula, RecursionError):
        return None
    return f if encode(f) == n else None


def is_formula_code(n: int) -> bool:
    return decode(n) is not None


def numbering_table() -> list[tuple]:
    return list(NUMBERING_TABLE)
