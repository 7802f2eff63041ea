"""Extended notation systems: base-kappa and base-lambda decompositions.

Coefficients and exponents are finitary Veblen normal forms (``CoeffTerm``),
which reach the small Veblen ordinal.  ``fv(a_k, ..., a_1, a_0, m)`` stands for
``phi_{Omega^k a_k + ... + Omega a_1 + a_0}(m)``.

An ``ExtTerm`` is kept as a base-kappa (or base-lambda) Cantor normal form with
strictly decreasing exponents and nonzero total coefficients.  The split view
(each coefficient written as a limit part followed by ones, so every summand
has coefficient 1 or a limit) is what ``summands()`` returns and what h(a),
types and canonical sequences are computed from.
"""

from __future__ import annotations

import enum
import functools
import re
from dataclasses import dataclass
from typing import Iterator, Sequence, Union

from . import ord_core
from .ord_core import EQ, GT, LT, NotationError, NotationSyntaxError, Ordering3
from .pairing import pair2, pair_list, unpair2, unpair_list


# ---------------------------------------------------------------------------
# finitary Veblen coefficients
# ---------------------------------------------------------------------------

class FVPrincipal:
    __slots__ = ("args", "__weakref__")
    _table: dict = {}

    args: tuple["CoeffTerm", ...]

    def __new__(cls, args: tuple["CoeffTerm", ...]) -> "FVPrincipal":
        key = tuple(id(a) for a in args)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "args", tuple(args))
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("FVPrincipal is immutable")

    def __repr__(self) -> str:
        return "fv(" + ",".join(render_coeff(a) for a in self.args) + ")"


class CoeffTerm:
    __slots__ = ("summands", "__weakref__")
    _table: dict = {}

    summands: tuple[FVPrincipal, ...]

    def __new__(cls, summands: tuple[FVPrincipal, ...] = ()) -> "CoeffTerm":
        summands = tuple(summands)
        key = tuple(id(p) for p in summands)
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "summands", summands)
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("CoeffTerm is immutable")

    def __repr__(self) -> str:
        return f"CoeffTerm({render_coeff(self)!r})"

    def __str__(self) -> str:
        return render_coeff(self)

    def __bool__(self) -> bool:
        return bool(self.summands)

    def __lt__(self, other: "CoeffTerm") -> bool:
        return _cmp_c(self, other) < 0


CZERO = CoeffTerm(())
_P_ONE = FVPrincipal((CZERO,))
CONE = CoeffTerm((_P_ONE,))


def _cp(p: FVPrincipal) -> CoeffTerm:
    return CoeffTerm((p,))


COMEGA = _cp(FVPrincipal((CONE,)))


def cnat(n: int) -> CoeffTerm:
    return CoeffTerm((_P_ONE,) * n)


def _padded(x: FVPrincipal, y: FVPrincipal) -> tuple[tuple, tuple]:
    a, b = x.args, y.args
    if len(a) < len(b):
        a = (CZERO,) * (len(b) - len(a)) + a
    elif len(b) < len(a):
        b = (CZERO,) * (len(a) - len(b)) + b
    return a, b


@functools.lru_cache(maxsize=None)
def _cmp_fp(x: FVPrincipal, y: FVPrincipal) -> int:
    if x is y:
        return 0
    a, b = _padded(x, y)
    i = next(k for k in range(len(a)) if a[k] is not b[k])
    c = _cmp_c(a[i], b[i])
    if c < 0:
        vy = _cp(y)
        return -1 if all(_cmp_c(t, vy) < 0 for t in a[i + 1:]) else 1
    vx = _cp(x)
    return 1 if all(_cmp_c(t, vx) < 0 for t in b[i + 1:]) else -1


def _cmp_c(a: CoeffTerm, b: CoeffTerm) -> int:
    if a is b:
        return 0
    for x, y in zip(a.summands, b.summands):
        c = _cmp_fp(x, y)
        if c:
            return c
    return (len(a.summands) > len(b.summands)) - (len(a.summands) < len(b.summands))


def fv_compare(a: CoeffTerm, b: CoeffTerm) -> Ordering3:
    return Ordering3(_cmp_c(a, b))


def fv_veblen(args: Sequence[CoeffTerm]) -> CoeffTerm:
    """Normal form of fv(args), collapsing fixed points."""
    args = tuple(args)
    if not args:
        raise NotationError("fv needs at least one argument")
    k = 0
    while k < len(args) - 1 and not args[k].summands:
        k += 1
    args = args[k:]
    nonzero = [j for j, t in enumerate(args) if t.summands]
    if nonzero:
        j = nonzero[-1]
        t = args[j]
        if len(t.summands) == 1:
            a, g = _padded(FVPrincipal(args), t.summands[0])
            shift = len(a) - len(args)
            diff = next((i for i in range(len(a)) if a[i] is not g[i]), None)
            if diff is not None and diff < j + shift and _cmp_c(a[diff], g[diff]) < 0:
                return t
    return _cp(FVPrincipal(args))


def cadd(a: CoeffTerm, b: CoeffTerm) -> CoeffTerm:
    if not b.summands:
        return a
    lead = b.summands[0]
    keep = list(a.summands)
    while keep and _cmp_fp(keep[-1], lead) < 0:
        keep.pop()
    return CoeffTerm(tuple(keep) + b.summands)


def cclassify(a: CoeffTerm) -> ord_core.TermClass:
    if not a.summands:
        return ord_core.TermClass.ZERO
    if a.summands[-1] is _P_ONE:
        return ord_core.TermClass.SUCCESSOR
    return ord_core.TermClass.LIMIT


def cpred(a: CoeffTerm) -> CoeffTerm:
    if cclassify(a) is not ord_core.TermClass.SUCCESSOR:
        raise NotationError(f"{render_coeff(a)} is not a successor")
    return CoeffTerm(a.summands[:-1])


def split_finite(a: CoeffTerm) -> tuple[CoeffTerm, int]:
    """a = limit_part + k with k finite."""
    s = a.summands
    k = 0
    while k < len(s) and s[len(s) - 1 - k] is _P_ONE:
        k += 1
    return CoeffTerm(s[: len(s) - k]), k


def from_ord(a: ord_core.OrdTerm) -> CoeffTerm:
    """Embed a binary Veblen term: phi_a(b) -> fv(a, b)."""
    return _from_ord_cached(a)


@functools.lru_cache(maxsize=None)
def _from_ord_cached(a: ord_core.OrdTerm) -> CoeffTerm:
    out = CZERO
    for p in a.summands:
        out = cadd(out, fv_veblen([_from_ord_cached(p.index), _from_ord_cached(p.arg)]))
    return out


def is_coeff_normal(a: CoeffTerm) -> bool:
    s = a.summands
    if any(_cmp_fp(s[i], s[i + 1]) < 0 for i in range(len(s) - 1)):
        return False
    for p in s:
        if not p.args or (len(p.args) > 1 and not p.args[0].summands):
            return False
        if not all(is_coeff_normal(t) for t in p.args):
            return False
        if fv_veblen(p.args) is not _cp(p):
            return False
    return True


def coeff_subterms(a: CoeffTerm) -> Iterator[CoeffTerm]:
    s = a.summands
    for k in range(1, len(s)):
        yield CoeffTerm(s[:k])
    for p in s:
        if len(s) > 1:
            yield _cp(p)
        for t in p.args:
            yield t
            yield from coeff_subterms(t)


def delta(n: int) -> CoeffTerm:
    """delta_0 = 1, delta_{n+1} = phi_{Omega * delta_n}(0) = fv(delta_n, 0, 0)."""
    x = CONE
    for _ in range(n):
        x = fv_veblen([x, CZERO, CZERO])
    return x


def tilde_delta(n: int, k: int) -> CoeffTerm:
    """Start at 1, then x -> phi_{Omega^k x}(0), a (k+2)-ary Veblen value."""
    x = CONE
    for _ in range(n):
        x = fv_veblen([x] + [CZERO] * (k + 1))
    return x


# ---------------------------------------------------------------------------
# base-kappa / base-lambda terms
# ---------------------------------------------------------------------------

KAPPA = "kappa"
LAMBDA = "lambda"
LEXP = "lexp"  # exponents of the lambda system: base lambda, natural exponents

Exponent = Union[CoeffTerm, int, "ExtTerm"]


class ExtTerm:
    """Cantor normal form over a base; ``runs`` = ((exponent, coefficient), ...)."""

    __slots__ = ("system", "runs", "__weakref__")
    _table: dict = {}

    system: str
    runs: tuple[tuple[Exponent, CoeffTerm], ...]

    def __new__(cls, system: str, runs: tuple = ()) -> "ExtTerm":
        runs = tuple(runs)
        key = (system, tuple((e if isinstance(e, int) else id(e), id(c)) for e, c in runs))
        obj = cls._table.get(key)
        if obj is None:
            obj = object.__new__(cls)
            object.__setattr__(obj, "system", system)
            object.__setattr__(obj, "runs", runs)
            cls._table[key] = obj
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("ExtTerm is immutable")

    def __repr__(self) -> str:
        return f"ExtTerm({render_ext(self)!r})"

    def __str__(self) -> str:
        return render_ext(self)

    def __bool__(self) -> bool:
        return bool(self.runs)

    def __lt__(self, other: "ExtTerm") -> bool:
        return _cmp_x(self, other) < 0

    def summands(self) -> list[tuple[Exponent, CoeffTerm]]:
        """Split view: each coefficient is 1 or a limit."""
        out = []
        for e, c in self.runs:
            lim, k = split_finite(c)
            if lim.summands:
                out.append((e, lim))
            out.extend([(e, CONE)] * k)
        return out


def ext_zero(system: str) -> ExtTerm:
    return ExtTerm(system, ())


def _exp_system(system: str) -> str | None:
    return {KAPPA: None, LAMBDA: LEXP, LEXP: "nat"}[system]


def _cmp_e(system: str, e: Exponent, f: Exponent) -> int:
    if system == LEXP:
        return (e > f) - (e < f)
    if system == KAPPA:
        return _cmp_c(e, f)
    return _cmp_x(e, f)


def _cmp_x(a: ExtTerm, b: ExtTerm) -> int:
    if a is b:
        return 0
    if a.system != b.system:
        raise NotationError(f"cannot compare {a.system} with {b.system} terms")
    for (e, c), (f, d) in zip(a.runs, b.runs):
        k = _cmp_e(a.system, e, f)
        if k:
            return k
        k = _cmp_c(c, d)
        if k:
            return k
    return (len(a.runs) > len(b.runs)) - (len(a.runs) < len(b.runs))


def ext_compare(a: ExtTerm, b: ExtTerm) -> Ordering3:
    return Ordering3(_cmp_x(a, b))


def _exp_zero(system: str) -> Exponent:
    if system == KAPPA:
        return CZERO
    if system == LEXP:
        return 0
    return ext_zero(LEXP)


def ext_monomial(system: str, exp: Exponent, coeff: CoeffTerm) -> ExtTerm:
    if not coeff.summands:
        return ext_zero(system)
    return ExtTerm(system, ((exp, coeff),))


def ext_add(a: ExtTerm, b: ExtTerm) -> ExtTerm:
    if a.system != b.system:
        raise NotationError("mixed systems")
    if not b.runs:
        return a
    e, c = b.runs[0]
    keep = []
    for f, d in a.runs:
        k = _cmp_e(a.system, f, e)
        if k > 0:
            keep.append((f, d))
        elif k == 0:
            c = cadd(d, c)
    return ExtTerm(a.system, tuple(keep) + ((e, c),) + b.runs[1:])


def ext_normalize(raw: Sequence[tuple[Exponent, CoeffTerm]], system: str) -> ExtTerm:
    """Normal form of the ordinal sum base^e1*c1 + base^e2*c2 + ... (in order)."""
    out = ext_zero(system)
    for e, c in raw:
        out = ext_add(out, ext_monomial(system, e, c))
    return out


def decompose(a: ExtTerm) -> list[tuple[Exponent, CoeffTerm]]:
    return a.summands()


def _exp_one(system: str) -> Exponent:
    if system == KAPPA:
        return CONE
    if system == LEXP:
        return 1
    return ext_one(LEXP)


def ext_one(system: str) -> ExtTerm:
    return ext_monomial(system, _exp_zero(system), CONE)


def _exp_is_zero(system: str, e: Exponent) -> bool:
    if system == LEXP:
        return e == 0
    return not (e.summands if system == KAPPA else e.runs)


def ext_class(a: ExtTerm) -> ord_core.TermClass:
    if not a.runs:
        return ord_core.TermClass.ZERO
    e, c = a.runs[-1]
    if _exp_is_zero(a.system, e) and cclassify(c) is ord_core.TermClass.SUCCESSOR:
        return ord_core.TermClass.SUCCESSOR
    return ord_core.TermClass.LIMIT


def ext_pred(a: ExtTerm) -> ExtTerm:
    if ext_class(a) is not ord_core.TermClass.SUCCESSOR:
        raise NotationError(f"{render_ext(a)} is not a successor")
    return h_of(a)


def h_of(a: ExtTerm) -> ExtTerm:
    """Drop the last summand of the split view."""
    if not a.runs:
        raise NotationError("h(0) is undefined")
    e, c = a.runs[-1]
    if cclassify(c) is ord_core.TermClass.SUCCESSOR:
        c = cpred(c)
        if c.summands:
            return ExtTerm(a.system, a.runs[:-1] + ((e, c),))
    return ExtTerm(a.system, a.runs[:-1])


def check_side_conditions(a: ExtTerm) -> bool:
    """Validate the decomposition conditions on the split view."""
    s = a.summands()
    for i in range(len(s) - 1):
        k = _cmp_e(a.system, s[i][0], s[i + 1][0])
        if k < 0:
            return False
        if k == 0 and _cmp_c(s[i][1], s[i + 1][1]) < 0:
            return False
    for e, c in s:
        if c is not CONE and cclassify(c) is not ord_core.TermClass.LIMIT:
            return False
        if a.system == LAMBDA and not check_side_conditions(e):
            return False
        if a.system == KAPPA and not is_coeff_normal(e):
            return False
        if not is_coeff_normal(c):
            return False
    for i in range(len(a.runs) - 1):
        if _cmp_e(a.system, a.runs[i][0], a.runs[i + 1][0]) <= 0:
            return False
    return all(c.summands for _, c in a.runs)


# ---------------------------------------------------------------------------
# types and canonical sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ExtType:
    k: int


class Scheme(enum.Enum):
    COEFF_LIMIT = "CoeffLimit"
    EXP_LIMIT = "ExpLimit"
    EXP_SUCCESSOR = "ExpSuccessor"
    LAMBDA_TYPE = "LambdaType"


@dataclass(frozen=True)
class CanonicalFamily:
    """Empty, finite, or indexed by a transfinite range (kept symbolic).

    For indexed families ``bound`` is the exclusive upper bound of the index
    (None = all coefficients, i.e. every index below the base).
    """

    kind: str  # "empty" | "finite" | "indexed"
    elements: tuple[ExtTerm, ...] = ()
    base: ExtTerm | None = None
    scheme: Scheme | None = None
    stride: Exponent | None = None
    bound: object = None
    level: int = 0

    @property
    def case(self) -> str:
        if self.kind != "indexed":
            return self.kind.capitalize()
        if self.scheme is Scheme.LAMBDA_TYPE:
            return f"LambdaType({self.level})"
        return self.scheme.value


def _split_last(system: str, e: ExtTerm) -> tuple[ExtTerm, int, CoeffTerm]:
    """For a lexp e = rest + lambda^g * d (split view), return (rest, g, d)."""
    s = e.summands()
    g, d = s[-1]
    rest = h_of(e)
    return rest, g, d


def type_of(a: ExtTerm) -> ExtType:
    if not a.runs:
        return ExtType(0)
    e, c = a.summands()[-1]
    if c is not CONE:
        return ExtType(0)
    if a.system == KAPPA:
        return ExtType(1 if cclassify(e) is ord_core.TermClass.SUCCESSOR else 0)
    if a.system != LAMBDA:
        raise NotationError(f"types are defined for kappa/lambda terms, not {a.system}")
    if not e.runs:
        return ExtType(0)
    _, g, d = _split_last(LEXP, e)
    return ExtType(g + 1) if d is CONE else ExtType(0)


def canonical_seq(a: ExtTerm) -> CanonicalFamily:
    if not a.runs:
        return CanonicalFamily("empty")
    h = h_of(a)
    e, c = a.summands()[-1]
    if c is not CONE:
        return CanonicalFamily("indexed", base=h, scheme=Scheme.COEFF_LIMIT, stride=e, bound=c)
    if _exp_is_zero(a.system, e):
        return CanonicalFamily("finite", elements=(h,))
    if a.system == KAPPA:
        if cclassify(e) is ord_core.TermClass.LIMIT:
            return CanonicalFamily("indexed", base=h, scheme=Scheme.EXP_LIMIT, bound=e)
        return CanonicalFamily("indexed", base=h, scheme=Scheme.EXP_SUCCESSOR, stride=cpred(e), level=1)
    rest, g, d = _split_last(LEXP, e)
    if d is not CONE:
        return CanonicalFamily("indexed", base=h, scheme=Scheme.EXP_LIMIT, bound=e)
    if g == 0:
        return CanonicalFamily("indexed", base=h, scheme=Scheme.LAMBDA_TYPE, stride=rest, level=1)
    return CanonicalFamily("indexed", base=h, scheme=Scheme.LAMBDA_TYPE, stride=rest, level=g + 1)


def sample_canonical(f: CanonicalFamily, g=None) -> ExtTerm:
    """Instantiate the family at index g (ignored for finite families)."""
    if f.kind == "empty":
        raise NotationError("the canonical sequence of 0 is empty")
    if f.kind == "finite":
        return f.elements[0]
    sysname = f.base.system
    if f.scheme is Scheme.EXP_LIMIT and sysname == KAPPA:
        ok = isinstance(g, CoeffTerm) and _cmp_c(g, f.bound) < 0
    elif f.scheme is Scheme.EXP_LIMIT:
        ok = isinstance(g, ExtTerm) and g.system == LEXP and _cmp_x(g, f.bound) < 0
    elif f.bound is not None:
        ok = isinstance(g, CoeffTerm) and _cmp_c(g, f.bound) < 0
    else:
        ok = isinstance(g, CoeffTerm)
    if not ok:
        raise NotationError(f"index {g} outside the range of this {f.case} family")
    if f.scheme is Scheme.COEFF_LIMIT:
        piece = ext_monomial(sysname, f.stride, g)
    elif f.scheme is Scheme.EXP_LIMIT:
        piece = ext_monomial(sysname, g, CONE)
    elif f.scheme is Scheme.EXP_SUCCESSOR:
        piece = ext_monomial(sysname, f.stride, g)
    elif f.level == 1:
        piece = ext_monomial(sysname, f.stride, g)
    else:
        exp = ext_add(f.stride, ext_monomial(LEXP, f.level - 2, g))
        piece = ext_monomial(sysname, exp, CONE)
    return ext_add(f.base, piece)


def coeff_sub(x: CoeffTerm, h: CoeffTerm) -> CoeffTerm | None:
    """The d with h + d = x, or None when x < h."""
    s, t = h.summands, x.summands
    i = 0
    while i < len(s) and i < len(t) and s[i] is t[i]:
        i += 1
    if i == len(s):
        return CoeffTerm(t[i:])
    if i < len(t) and _cmp_fp(t[i], s[i]) > 0:
        return CoeffTerm(t[i:])
    return None


def ext_sub(x: ExtTerm, h: ExtTerm) -> ExtTerm | None:
    """Left subtraction: the r with h + r = x, or None when x < h."""
    hs, xs = h.runs, x.runs
    i = 0
    while i < len(hs) and i < len(xs) and hs[i] == xs[i]:
        i += 1
    if i == len(hs):
        return ExtTerm(x.system, xs[i:])
    if i == len(xs):
        return None
    (e, c), (f, d) = xs[i], hs[i]
    k = _cmp_e(x.system, e, f)
    if k < 0:
        return None
    if k > 0:
        return ExtTerm(x.system, xs[i:])
    rest = coeff_sub(c, d)
    if rest is None or not rest.summands:
        return None
    return ExtTerm(x.system, ((e, rest),) + xs[i + 1:])


def in_canonical(f: CanonicalFamily, x: ExtTerm) -> bool:
    """Membership of x in the (symbolic) family."""
    if f.kind == "empty":
        return False
    if f.kind == "finite":
        return x is f.elements[0]
    r = ext_sub(x, f.base)
    if r is None:
        return False
    if not r.runs:
        g = CZERO if f.scheme is not Scheme.EXP_LIMIT or f.base.system == KAPPA else ext_zero(LEXP)
        return _index_ok(f, g) and sample_canonical(f, g) is x
    if len(r.runs) != 1:
        return False
    e, c = r.runs[0]
    if f.scheme is Scheme.EXP_LIMIT:
        g = e if c is CONE else None
    elif f.scheme is Scheme.LAMBDA_TYPE and f.level >= 2:
        if c is not CONE:
            return False
        d = ext_sub(e, f.stride)
        if d is None or len(d.runs) > 1 or (d.runs and d.runs[0][0] != f.level - 2):
            return False
        g = d.runs[0][1] if d.runs else CZERO
    else:
        g = c if _cmp_e(f.base.system, e, f.stride) == 0 else None
    return g is not None and _index_ok(f, g) and sample_canonical(f, g) is x


def _index_ok(f: CanonicalFamily, g) -> bool:
    try:
        sample_canonical(f, g)
    except NotationError:
        return False
    return True


def kappa_omega_pow(alpha: CoeffTerm) -> ExtTerm:
    """(kappa*omega)^alpha, using omega*kappa = kappa."""
    cls = cclassify(alpha)
    if cls is ord_core.TermClass.ZERO:
        return ext_one(KAPPA)
    if cls is ord_core.TermClass.LIMIT:
        return ext_monomial(KAPPA, alpha, CONE)
    return ext_monomial(KAPPA, alpha, COMEGA)


def ext_subterms(a: ExtTerm) -> Iterator:
    for e, c in a.runs:
        if isinstance(e, CoeffTerm):
            yield e
            yield from coeff_subterms(e)
        elif isinstance(e, ExtTerm):
            yield from ext_subterms(e)
        yield c
        yield from coeff_subterms(c)


# ---------------------------------------------------------------------------
# text
# ---------------------------------------------------------------------------

def render_coeff(a: CoeffTerm) -> str:
    if not a.summands:
        return "0"
    parts = []
    ones = 0
    for p in a.summands:
        if p is _P_ONE:
            ones += 1
            continue
        parts.append(_render_fp(p))
    if ones:
        parts.append(str(ones))
    return " + ".join(parts)


def _coeff_atom(a: CoeffTerm) -> str:
    s = render_coeff(a)
    return s if not any(op in s for op in (" + ", "^", "*")) else f"({s})"


def _render_fp(p: FVPrincipal) -> str:
    if len(p.args) == 1:
        b = p.args[0]
        if b is CONE:
            return "w"
        s = render_coeff(b)
        return f"w^{s}" if (" + " not in s and not s.startswith("w^")) else f"w^({s})"
    if len(p.args) == 2:
        return f"phi({render_coeff(p.args[0])},{render_coeff(p.args[1])})"
    return "fv(" + ",".join(render_coeff(a) for a in p.args) + ")"


def render_ext(a: ExtTerm) -> str:
    """Renders runs, so finite coefficients appear as ``*n`` rather than repeats."""
    if not a.runs:
        return "0"
    base = "k" if a.system == KAPPA else "l"
    parts = []
    for e, c in a.runs:
        if _exp_is_zero(a.system, e):
            parts.append(render_coeff(c))
            continue
        if a.system == LEXP:
            es = str(e)
        elif a.system == KAPPA:
            es = _coeff_atom(e)
        else:
            es = render_ext(e)
            es = es if " + " not in es and "*" not in es and "^" not in es else f"({es})"
        unit = e == 1 if a.system == LEXP else e is _exp_one(a.system)
        head = base if unit else f"{base}^{es}"
        parts.append(head if c is CONE else f"{head}*{_coeff_atom(c)}")
    return " + ".join(parts)


_TOK = re.compile(r"\s*(?:(\d+)|(phi|fv|eps0|w|k|l)|(.))")


class _ExtParser:
    def __init__(self, text: str):
        self.text = text = text.strip()
        self.toks = []
        pos = 0
        while pos < len(text):
            m = _TOK.match(text, pos)
            if m is None or m.end() == pos:
                break
            if m.group(1):
                self.toks.append(("num", m.group(1), m.start(1)))
            elif m.group(2):
                self.toks.append(("kw", m.group(2), m.start(2)))
            elif m.group(3):
                self.toks.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def peek(self, off: int = 0):
        j = self.i + off
        return self.toks[j] if j < len(self.toks) else ("eof", "", len(self.text))

    def take(self, value: str | None = None):
        tok = self.peek()
        if tok[0] == "eof" or (value is not None and tok[1] != value):
            raise NotationSyntaxError(f"expected {value or 'a token'!r}, got {tok[1] or 'end of input'!r}", self.text, tok[2])
        self.i += 1
        return tok

    def done(self):
        tok = self.peek()
        if tok[0] != "eof":
            raise NotationSyntaxError(f"unexpected {tok[1]!r}", self.text, tok[2])

    # coefficients
    def coeff(self) -> CoeffTerm:
        t = self.cpow()
        while self.peek()[1] == "+" and not self._ext_item_ahead(1):
            self.take("+")
            t = cadd(t, self.cpow())
        return t

    def _ext_item_ahead(self, off: int) -> bool:
        return self.peek(off)[1] in ("k", "l")

    def cpow(self) -> CoeffTerm:
        if self.peek()[1] == "w" and self.peek(1)[1] == "^":
            self.take()
            self.take("^")
            return fv_veblen([self.catom()])
        return self.catom()

    def catom(self) -> CoeffTerm:
        kind, val, pos = self.take()
        if kind == "num":
            return cnat(int(val))
        if val == "w":
            return COMEGA
        if val == "eps0":
            return fv_veblen([CONE, CZERO])
        if val in ("phi", "fv"):
            self.take("(")
            args = [self.coeff()]
            while self.peek()[1] == ",":
                self.take(",")
                args.append(self.coeff())
            self.take(")")
            if val == "phi" and len(args) != 2:
                raise NotationSyntaxError("phi takes two arguments", self.text, pos)
            return fv_veblen(args)
        if val == "(":
            t = self.coeff()
            self.take(")")
            return t
        raise NotationSyntaxError(f"unexpected {val!r}", self.text, pos)

    # base-kappa / base-lambda sums
    def ext(self, system: str) -> ExtTerm:
        out = self.ext_item(system)
        while self.peek()[1] == "+":
            self.take("+")
            out = ext_add(out, self.ext_item(system))
        return out

    def ext_item(self, system: str) -> ExtTerm:
        base = {KAPPA: "k", LAMBDA: "l", LEXP: "l"}[system]
        tok = self.peek()
        if tok[1] in ("k", "l"):
            if tok[1] != base:
                raise NotationSyntaxError(f"base {tok[1]!r} in a {system} term", self.text, tok[2])
            self.take()
            if self.peek()[1] == "^":
                self.take("^")
                exp = self.exponent(system)
            else:
                exp = _exp_one(system)
            coeff = CONE
            if self.peek()[1] == "*":
                self.take("*")
                coeff = self.cpow()
            return ext_monomial(system, exp, coeff)
        if tok[1] == "(" and self._paren_holds_ext():
            self.take("(")
            t = self.ext(system)
            self.take(")")
            return t
        return ext_monomial(system, _exp_zero(system), self.cpow())

    def _paren_holds_ext(self) -> bool:
        depth = 0
        j = self.i
        while j < len(self.toks):
            v = self.toks[j][1]
            if v == "(":
                depth += 1
            elif v == ")":
                depth -= 1
                if depth == 0:
                    return False
            elif v in ("k", "l") and depth == 1:
                return True
            j += 1
        return False

    def exponent(self, system: str):
        if system == KAPPA:
            return self.catom()
        if system == LEXP:
            kind, val, pos = self.take()
            if kind != "num":
                raise NotationSyntaxError("lambda exponents below lambda^omega need natural inner exponents", self.text, pos)
            return int(val)
        if self.peek()[1] == "(":
            self.take("(")
            e = self.ext(LEXP)
            self.take(")")
            return e
        if self.peek()[1] == "l":
            self.take()
            k = 1
            if self.peek()[1] == "^":
                self.take("^")
                k = self.exponent(LEXP)
            return ext_monomial(LEXP, k, CONE)
        return ext_monomial(LEXP, 0, self.catom())


def parse_coeff(text: str) -> CoeffTerm:
    p = _ExtParser(text)
    t = p.coeff()
    p.done()
    return t


def parse_ext(text: str, system: str = KAPPA) -> ExtTerm:
    p = _ExtParser(text)
    t = p.ext(system)
    p.done()
    return t


# ---------------------------------------------------------------------------
# codes (structural, injective; decoding is partial)
# ---------------------------------------------------------------------------

def encode_coeff(a: CoeffTerm) -> int:
    return pair_list([pair_list([encode_coeff(t) for t in p.args]) for p in a.summands])


def _items(n: int) -> tuple[int, ...]:
    try:
        return unpair_list(n)
    except ValueError:
        raise NotationError(f"{n} is not a coefficient code") from None


def decode_coeff(n: int) -> CoeffTerm:
    out = CZERO
    for pc in _items(n):
        args = [decode_coeff(m) for m in _items(pc)]
        if not args:
            raise NotationError(f"{n} is not a coefficient code")
        p = fv_veblen(args)
        if len(p.summands) != 1 or list(p.summands[0].args) != args:
            raise NotationError(f"{n} codes a non-normal coefficient")
        out_next = cadd(out, p)
        if len(out_next.summands) != len(out.summands) + 1:
            raise NotationError(f"{n} codes an unsorted sum")
        out = out_next
    return out


def coeff_weight(a: CoeffTerm) -> int:
    """Principals plus argument slots; finitely many normal forms per weight."""
    return sum(1 + sum(1 + coeff_weight(t) for t in p.args) for p in a.summands)


class _CoeffEnumeration:
    """Dense ranking of normal coefficients: by weight, then by order.

    The structural code above is injective but sparse (only 0, 1, 2 lie
    below 1000); this ranking numbers every coefficient.
    """

    def __init__(self, max_weight: int = 40):
        self.max_weight = max_weight
        self.by_weight: list[list[CoeffTerm]] = []
        self.princ: dict[int, list[FVPrincipal]] = {}
        self.offsets: list[int] = []
        self.rank: dict[int, int] = {}

    def principals(self, w: int) -> list[FVPrincipal]:
        if w not in self.princ:
            out = []

            def args(rem: int, n: int, acc: list[CoeffTerm]):
                if n == 0:
                    if rem == 0:
                        out.append(tuple(acc))
                    return
                for k in range(rem + 1):
                    for t in self.level(k):
                        if not acc and not t.summands and n + len(acc) > 1:
                            continue
                        acc.append(t)
                        args(rem - k, n - 1, acc)
                        acc.pop()

            for arity in range(1, w):
                args(w - 1 - arity, arity, [])
            ps = []
            for a in out:
                v = fv_veblen(a)
                if len(v.summands) == 1 and v.summands[0].args == a:
                    ps.append(v.summands[0])
            self.princ[w] = ps
        return self.princ[w]

    def level(self, w: int) -> list[CoeffTerm]:
        while len(self.by_weight) <= w:
            self._build(len(self.by_weight))
        return self.by_weight[w]

    def _build(self, w: int) -> None:
        if w > self.max_weight:
            raise NotationError(f"coefficients of weight above {self.max_weight} are outside the ranked range")
        out: list[tuple[FVPrincipal, ...]] = []

        def rec(rem: int, bound: FVPrincipal | None, acc: list[FVPrincipal]):
            if rem == 0:
                out.append(tuple(acc))
                return
            for k in range(2, rem + 1):
                for p in self.principals(k):
                    if bound is None or _cmp_fp(p, bound) <= 0:
                        acc.append(p)
                        rec(rem - k, p, acc)
                        acc.pop()

        if w == 0:
            terms = [CZERO]
        else:
            rec(w, None, [])
            terms = sorted((CoeffTerm(s) for s in out), key=functools.cmp_to_key(_cmp_c))
        start = self.offsets[-1] + len(self.by_weight[-1]) if self.by_weight else 0
        self.offsets.append(start)
        self.by_weight.append(terms)
        for j, t in enumerate(terms):
            self.rank[id(t)] = start + j

    def encode(self, a: CoeffTerm) -> int:
        self.level(coeff_weight(a))
        return self.rank[id(a)]

    def decode(self, n: int) -> CoeffTerm:
        if n < 0:
            raise NotationError("ranks are naturals")
        w = 0
        while True:
            terms = self.level(w)
            if n < self.offsets[w] + len(terms):
                return terms[n - self.offsets[w]]
            w += 1


_COEFF_ENUM = _CoeffEnumeration()


def coeff_rank(a: CoeffTerm) -> int:
    return _COEFF_ENUM.encode(a)


def coeff_unrank(n: int) -> CoeffTerm:
    return _COEFF_ENUM.decode(n)


def encode_ext(a: ExtTerm) -> int:
    codes = []
    for e, c in a.runs:
        if a.system == LEXP:
            ec = e
        elif a.system == KAPPA:
            ec = encode_coeff(e)
        else:
            ec = encode_ext(e)
        codes.append(pair2(ec, encode_coeff(c)))
    return pair_list(codes)


def decode_ext(n: int, system: str = KAPPA) -> ExtTerm:
    runs = []
    try:
        items = unpair_list(n)
    except ValueError:
        raise NotationError(f"{n} is not an ext code") from None
    for rc in items:
        ec, cc = unpair2(rc)
        if system == LEXP:
            e = ec
        elif system == KAPPA:
            e = decode_coeff(ec)
        else:
            e = decode_ext(ec, LEXP)
        c = decode_coeff(cc)
        if not c.summands:
            raise NotationError(f"{n} has a zero coefficient")
        runs.append((e, c))
    t = ExtTerm(system, tuple(runs))
    for i in range(len(runs) - 1):
        if _cmp_e(system, runs[i][0], runs[i + 1][0]) <= 0:
            raise NotationError(f"{n} codes unsorted exponents")
    return t
