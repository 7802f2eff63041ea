"""Notation systems living on the naturals: g0 (below Gamma_0), kk, lambda.

``ORDFORGE_SYSTEM`` selects the active system for code-indexed operations.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Any, Callable

from . import ord_core, ord_ext
from .ord_core import NotationError, Ordering3


@dataclass(frozen=True)
class NotationSystem:
    name: str
    parse: Callable[[str], Any]
    render: Callable[[Any], str]
    encode: Callable[[Any], int]
    decode: Callable[[int], Any]
    compare: Callable[[Any, Any], Ordering3]

    def compare_codes(self, m: int, n: int) -> Ordering3:
        return self.compare(self.decode(m), self.decode(n))

    def prec(self, m: int, n: int) -> bool:
        """m precedes n; false when either is not a valid code."""
        try:
            return self.compare_codes(m, n) is ord_core.LT
        except NotationError:
            return False

    def valid(self, n: int) -> bool:
        try:
            self.decode(n)
        except NotationError:
            return False
        return True

    @property
    def zero(self) -> Any:
        return self.decode(0)


def _ext_system(tag: str) -> NotationSystem:
    return NotationSystem(
        name="kk" if tag == ord_ext.KAPPA else "lambda",
        parse=lambda s: ord_ext.parse_ext(s, tag),
        render=ord_ext.render_ext,
        encode=ord_ext.encode_ext,
        decode=functools.lru_cache(maxsize=1 << 14)(lambda n: ord_ext.decode_ext(n, tag)),
        compare=ord_ext.ext_compare,
    )


G0 = NotationSystem(
    name="g0",
    parse=ord_core.parse_term,
    render=ord_core.render,
    encode=ord_core.encode_nat,
    decode=ord_core.decode_nat,
    compare=ord_core.compare,
)
KK = _ext_system(ord_ext.KAPPA)
LAMBDA = _ext_system(ord_ext.LAMBDA)

SYSTEMS = {"g0": G0, "kk": KK, "lambda": LAMBDA}


def get_system(name: str | None = None) -> NotationSystem:
    name = name or os.environ.get("ORDFORGE_SYSTEM", "g0")
    try:
        return SYSTEMS[name]
    except KeyError:
        raise NotationError(f"unknown notation system {name!r} (expected g0, kk or lambda)") from None


# decidable facts about ext codes, used by the truth theories

def ext_type(sys: NotationSystem, n: int) -> int:
    return ord_ext.type_of(sys.decode(n)).k


def ext_h(sys: NotationSystem, n: int) -> int:
    a = sys.decode(n)
    return sys.encode(ord_ext.h_of(a)) if a.runs else 0


def ext_seq(sys: NotationSystem, x: int, n: int) -> bool:
    """x is in the canonical sequence of the term coded by n."""
    try:
        a = sys.decode(n)
        b = sys.decode(x)
    except NotationError:
        return False
    return ord_ext.in_canonical(ord_ext.canonical_seq(a), b)
