"""Binary Veblen notations below Gamma_0.

A term is a nonincreasing sum of principal terms ``phi(a, b)``; the empty sum
is 0.  Terms are hash-consed, so structural equality is object identity and
comparison results can be cached on the objects themselves.

Normal form for ``phi(a, b)``: ``b`` is not a single principal ``phi(c, d)``
with ``c > a`` (such a ``b`` is already a fixed point of ``phi(a, .)``).
"""

from __future__ import annotations

import enum
import functools
import re
from typing import Iterator


class Ordering3(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1

    def flip(self) -> "Ordering3":
        return Ordering3(-self.value)


LT, EQ, GT = Ordering3.LT, Ordering3.EQ, Ordering3.GT


class TermClass(enum.Enum):
    ZERO = "Zero"
    SUCCESSOR = "Successor"
    LIMIT = "Limit"


class NotationError(ValueError):
    """Domain error on a notation (e.g. fundamental sequence of a successor)."""


class NotationSyntaxError(NotationError):
    def __init__(self, msg: str, text: str, pos: int):
        super().__init__(f"{msg} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


class PrincipalTerm:
    __slots__ = ("index", "arg", "__weakref__")
    _table: dict = {}

    index: "OrdTerm"
    arg: "OrdTerm"

    def __new__(cls, index: "OrdTerm", arg: "OrdTerm") -> "PrincipalTerm":
        key = (id(index), id(arg))
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "index", index)
            object.__setattr__(obj, "arg", arg)
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("PrincipalTerm is immutable")

    def __reduce__(self):
        return (PrincipalTerm, (self.index, self.arg))

    def __repr__(self) -> str:
        return f"phi({render(self.index)},{render(self.arg)})"


class OrdTerm:
    """Normal-form notation: nonincreasing tuple of principal summands."""

    __slots__ = ("summands", "__weakref__")
    _table: dict = {}

    summands: tuple[PrincipalTerm, ...]

    def __new__(cls, summands: tuple[PrincipalTerm, ...] = ()) -> "OrdTerm":
        summands = tuple(summands)
        key = tuple(id(p) for p in summands)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "summands", summands)
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("OrdTerm is immutable")

    def __reduce__(self):
        return (OrdTerm, (self.summands,))

    def __repr__(self) -> str:
        return f"OrdTerm({render(self)!r})"

    def __str__(self) -> str:
        return render(self, sugar=True)

    def __bool__(self) -> bool:
        return bool(self.summands)

    # rich comparisons so terms sort naturally
    def __lt__(self, other: "OrdTerm") -> bool:
        return compare(self, other) is LT

    def __le__(self, other: "OrdTerm") -> bool:
        return compare(self, other) is not GT

    def __gt__(self, other: "OrdTerm") -> bool:
        return compare(self, other) is GT

    def __ge__(self, other: "OrdTerm") -> bool:
        return compare(self, other) is not LT


ZERO = OrdTerm(())


def principal(p: PrincipalTerm) -> OrdTerm:
    return OrdTerm((p,))


ONE = principal(PrincipalTerm(ZERO, ZERO))
OMEGA = principal(PrincipalTerm(ZERO, ONE))


def nat(n: int) -> OrdTerm:
    if n < 0:
        raise NotationError("negative natural")
    return OrdTerm(ONE.summands * n)


def is_principal(a: OrdTerm) -> bool:
    return len(a.summands) == 1


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

@functools.lru_cache(maxsize=None)
def _cmp_p(x: PrincipalTerm, y: PrincipalTerm) -> int:
    if x is y:
        return 0
    c = _cmp_t(x.index, y.index)
    if c == 0:
        return _cmp_t(x.arg, y.arg)
    if c < 0:
        # phi_a(b) < phi_c(d) with a < c iff b < phi_c(d)
        return -1 if _cmp_t(x.arg, principal(y)) < 0 else 1
    # a > c: phi_a(b) < phi_c(d) iff phi_a(b) <= d
    return -1 if _cmp_t(principal(x), y.arg) <= 0 else 1


def _cmp_t(a: OrdTerm, b: OrdTerm) -> int:
    if a is b:
        return 0
    for x, y in zip(a.summands, b.summands):
        c = _cmp_p(x, y)
        if c:
            return c
    return (len(a.summands) > len(b.summands)) - (len(a.summands) < len(b.summands))


def compare(a: OrdTerm, b: OrdTerm) -> Ordering3:
    return Ordering3(_cmp_t(a, b))


def compare_principal(x: PrincipalTerm, y: PrincipalTerm) -> Ordering3:
    return Ordering3(_cmp_p(x, y))


def is_normal(a: OrdTerm) -> bool:
    """Check the normal-form invariants recursively (independent of interning)."""
    seen: set[int] = set()

    def ok_t(t: OrdTerm) -> bool:
        s = t.summands
        if any(_cmp_p(s[i], s[i + 1]) < 0 for i in range(len(s) - 1)):
            return False
        return all(ok_p(p) for p in s)

    def ok_p(p: PrincipalTerm) -> bool:
        if id(p) in seen:
            return True
        if not (ok_t(p.index) and ok_t(p.arg)):
            return False
        b = p.arg
        if is_principal(b) and _cmp_t(b.summands[0].index, p.index) > 0:
            return False
        seen.add(id(p))
        return True

    return ok_t(a)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def add(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    if not b.summands:
        return a
    lead = b.summands[0]
    keep = list(a.summands)
    while keep and _cmp_p(keep[-1], lead) < 0:
        keep.pop()
    return OrdTerm(tuple(keep) + b.summands)


def veblen(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    if is_principal(b) and _cmp_t(b.summands[0].index, a) > 0:
        return b
    return principal(PrincipalTerm(a, b))


def omega_pow(a: OrdTerm) -> OrdTerm:
    return veblen(ZERO, a)


def log_principal(p: PrincipalTerm) -> OrdTerm:
    """The exponent e with p = omega^e."""
    if p.index is ZERO:
        return p.arg
    return principal(p)


def mul(a: OrdTerm, b: OrdTerm) -> OrdTerm:
    if not a.summands or not b.summands:
        return ZERO
    lead_exp = log_principal(a.summands[0])
    out = ZERO
    for q in b.summands:
        if q is ONE.summands[0]:
            out = add(out, a)
        else:
            out = add(out, omega_pow(add(lead_exp, log_principal(q))))
    return out


def classify(a: OrdTerm) -> TermClass:
    if not a.summands:
        return TermClass.ZERO
    if a.summands[-1] is ONE.summands[0]:
        return TermClass.SUCCESSOR
    return TermClass.LIMIT


def predecessor(a: OrdTerm) -> OrdTerm:
    if classify(a) is not TermClass.SUCCESSOR:
        raise NotationError(f"{render(a)} is not a successor")
    return OrdTerm(a.summands[:-1])


def _iterate(a: OrdTerm, start: OrdTerm, times: int) -> OrdTerm:
    x = start
    for _ in range(times):
        x = veblen(a, x)
    return x


def fund_seq(a: OrdTerm, n: int) -> OrdTerm:
    """The n-th element a[n] of the pinned fundamental sequence of a limit."""
    if n < 0:
        raise NotationError("index must be a natural")
    cls = classify(a)
    if cls is not TermClass.LIMIT:
        raise NotationError(f"{render(a)} is {cls.value.lower()}; no fundamental sequence")
    if len(a.summands) > 1:
        head = OrdTerm(a.summands[:-1])
        return add(head, fund_seq(principal(a.summands[-1]), n))
    p = a.summands[0]
    idx, arg = p.index, p.arg
    if idx is ZERO:
        if classify(arg) is TermClass.SUCCESSOR:
            # omega^(b+1)[n] = omega^b * (n+1)
            return OrdTerm(omega_pow(predecessor(arg)).summands * (n + 1))
        return omega_pow(fund_seq(arg, n))
    arg_cls = classify(arg)
    if arg_cls is TermClass.LIMIT:
        return veblen(idx, fund_seq(arg, n))
    if arg_cls is TermClass.ZERO:
        base = ONE
    else:
        base = add(veblen(idx, predecessor(arg)), ONE)
    if classify(idx) is TermClass.SUCCESSOR:
        return _iterate(predecessor(idx), base, n + 1)
    if arg_cls is TermClass.ZERO:
        return veblen(fund_seq(idx, n), ZERO)
    return veblen(fund_seq(idx, n), base)


def gamma(n: int) -> OrdTerm:
    x = ONE
    for _ in range(n):
        x = veblen(x, ZERO)
    return x


def subterms(a: OrdTerm) -> Iterator[OrdTerm]:
    """All proper subterms (components and proper summand prefixes), each < a."""
    s = a.summands
    for k in range(1, len(s)):
        yield OrdTerm(s[:k])
    for p in s:
        if len(s) > 1:
            yield principal(p)
        yield p.index
        yield p.arg
        yield from subterms(p.index)
        yield from subterms(p.arg)


def node_count(a: OrdTerm) -> int:
    return sum(1 + node_count(p.index) + node_count(p.arg) for p in a.summands)


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------

def render(a: OrdTerm, sugar: bool = False) -> str:
    if not a.summands:
        return "0"
    if not sugar:
        return " + ".join(f"phi({render(p.index)},{render(p.arg)})" for p in a.summands)
    parts: list[str] = []
    ones = 0
    for p in a.summands:
        if p is ONE.summands[0]:
            ones += 1
            continue
        parts.append(_render_p_sugar(p))
    if ones:
        parts.append(str(ones))
    return " + ".join(parts)


def _render_p_sugar(p: PrincipalTerm) -> str:
    if p.index is ZERO:
        if p.arg is ONE:
            return "w"
        b = p.arg
        inner = render(b, sugar=True)
        atomic = b is OMEGA or all(q is ONE.summands[0] for q in b.summands) or (
            is_principal(b) and b.summands[0].index is not ZERO
        )
        return f"w^{inner}" if atomic else f"w^({inner})"
    return f"phi({render(p.index, sugar=True)},{render(p.arg, sugar=True)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(phi|eps0|w)|(.))")


class _Parser:
    def __init__(self, text: str):
        self.text = text = text.strip()
        self.toks: list[tuple[str, str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:
                break
            if m.group(1):
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("kw", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else ("eof", "", len(self.text))

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok[0] == "eof" or (value is not None and tok[1] != value):
            want = repr(value) if value else "a token"
            raise NotationSyntaxError(f"expected {want}, got {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> OrdTerm:
        if not self.toks:
            raise NotationSyntaxError("empty notation", self.text, 0)
        t = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise NotationSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return t

    def expr(self) -> OrdTerm:
        t = self.power()
        while self.peek()[1] == "+":
            self.take("+")
            t = add(t, self.power())
        return t

    def power(self) -> OrdTerm:
        tok = self.peek()
        if tok == ("kw", "w", tok[2]) and self.i + 1 < len(self.toks) and self.toks[self.i + 1][1] == "^":
            self.take()
            self.take("^")
            return omega_pow(self.atom())
        return self.atom()

    def atom(self) -> OrdTerm:
        kind, val, pos = self.take()
        if kind == "num":
            return nat(int(val))
        if val == "w":
            return OMEGA
        if val == "eps0":
            return veblen(ONE, ZERO)
        if val == "phi":
            self.take("(")
            a = self.expr()
            self.take(",")
            b = self.expr()
            self.take(")")
            return veblen(a, b)
        if val == "(":
            t = self.expr()
            self.take(")")
            return t
        raise NotationSyntaxError(f"unexpected {val!r}", self.text, pos)


def parse_term(text: str) -> OrdTerm:
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# coding on the naturals
# ---------------------------------------------------------------------------

class _Enumeration:
    """Normal forms ranked by node count, then by ordinal order within a class."""

    def __init__(self, max_nodes: int = 12):
        self.max_nodes = max_nodes
        self.by_size: list[list[OrdTerm]] = []
        self.princ_by_size: dict[int, list[PrincipalTerm]] = {}
        self.offsets: list[int] = []
        self.rank: dict[int, int] = {}

    def principals(self, k: int) -> list[PrincipalTerm]:
        if k not in self.princ_by_size:
            out = []
            for i in range(k):
                for idx in self.level(i):
                    for arg in self.level(k - 1 - i):
                        if is_principal(arg) and _cmp_t(arg.summands[0].index, idx) > 0:
                            continue
                        out.append(PrincipalTerm(idx, arg))
            self.princ_by_size[k] = out
        return self.princ_by_size[k]

    def level(self, k: int) -> list[OrdTerm]:
        while len(self.by_size) <= k:
            self._build(len(self.by_size))
        return self.by_size[k]

    def _build(self, k: int) -> None:
        if k > self.max_nodes:
            raise NotationError(f"notations with more than {self.max_nodes} phi-nodes are outside the coded range")
        out: list[tuple[PrincipalTerm, ...]] = []

        def rec(rem: int, bound: PrincipalTerm | None, acc: list[PrincipalTerm]):
            if rem == 0:
                out.append(tuple(acc))
                return
            for size in range(1, rem + 1):
                for p in self.principals(size):
                    if bound is None or _cmp_p(p, bound) <= 0:
                        acc.append(p)
                        rec(rem - size, p, acc)
                        acc.pop()

        if k == 0:
            terms = [ZERO]
        else:
            rec(k, None, [])
            terms = sorted((OrdTerm(s) for s in out), key=functools.cmp_to_key(_cmp_t))
        start = self.offsets[-1] + len(self.by_size[-1]) if self.by_size else 0
        self.offsets.append(start)
        self.by_size.append(terms)
        for j, t in enumerate(terms):
            self.rank[id(t)] = start + j

    def encode(self, a: OrdTerm) -> int:
        self.level(node_count(a))
        return self.rank[id(a)]

    def decode(self, n: int) -> OrdTerm:
        if n < 0:
            raise NotationError("codes are naturals")
        k = 0
        while True:
            terms = self.level(k)
            if n < self.offsets[k] + len(terms):
                return terms[n - self.offsets[k]]
            k += 1


_ENUM = _Enumeration()


def encode_nat(a: OrdTerm) -> int:
    return _ENUM.encode(a)


def decode_nat(n: int) -> OrdTerm:
    return _ENUM.decode(n)


def compare_codes(m: int, n: int) -> Ordering3:
    return compare(decode_nat(m), decode_nat(n))
