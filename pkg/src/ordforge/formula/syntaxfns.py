"""Recursive syntax functions on Goedel numbers: f, g, h, Rd, Bd."""

from __future__ import annotations

from ..pairing import pair, proj  # noqa: F401  (re-exported)
from ..systems import NotationSystem, get_system
from .godel import decode, encode
from .syntax import (
    All, CaptureError, Formula, Iff, Num, Rel, RelSym, free_num_vars, free_set_vars, quote, relsyms,
    subst, sym_index_value,
)


def subst_f(n: int, i: int, k: int) -> int:
    """Code of A(k) from the code of A(v_i); 0 on non-formulas."""
    a = decode(n)
    if a is None:
        return 0
    try:
        return encode(subst(a, i, Num(k)))
    except CaptureError:
        return 0


def close_g(n: int, i: int) -> int:
    """Code of (forall v_i) A; 0 on non-formulas."""
    a = decode(n)
    return 0 if a is None else encode(All(i, a))


def truth_bicond(a: Formula, sym: RelSym) -> Formula:
    """A(v1..vj) <-> R(<A(v1..vj)>) with the numerals of its free variables plugged in.

    A closed A is quoted by the numeral of its code.
    """
    fv = sorted(free_num_vars(a))
    return Iff(a, Rel(sym, quote(a, fv) if fv else Num(encode(a))))


def bicond_h(a: int, n: int, level: int = 1) -> int:
    """h(a, n): the Tarski biconditional for T_a at the given level."""
    f = decode(n)
    if f is None or free_set_vars(f):
        return 0
    return encode(truth_bicond(f, RelSym("TA", level, Num(a), "")))


def readable(f: Formula, a: int, level: int, system: NotationSystem) -> bool:
    """Only lower-level symbols and level-`level` T_b / Acc_b with b < a."""
    for s in relsyms(f):
        if s.level < level:
            continue
        if s.level > level or s.kind not in ("TA", "AccA"):
            return False
        b = sym_index_value(s)
        if b is None or not system.prec(b, a):
            return False
    return True


def readable_rd(a: int, n: int, level: int = 1, system: NotationSystem | None = None) -> bool:
    f = decode(n)
    if f is None:
        return False
    return readable(f, a, level, system or get_system())


def bounded_bd(n: int) -> bool:
    f = decode(n)
    return f is not None and not free_set_vars(f)
