"""Length-graded bijective pairing on the naturals.

Cantor pairing squares its arguments, so codes of nested syntax would grow
doubly exponentially in depth.  Here a natural x is read as the bit string
s(x) with x + 1 = 0b1s(x) (bijective base 2), and pairs are ranked by
(|s(x)| + |s(y)|, |s(x)|, s(x), s(y)).  The code of a pair then has about
|s(x)| + |s(y)| + log bits.

    pair2(x, y) = (T - 1) * 2**T + 1 + |s(x)| * 2**T + v(x) * 2**|s(y)| + v(y)

with T = |s(x)| + |s(y)| and v the value of the bit string.
"""

from __future__ import annotations

from typing import Sequence


def _split(x: int) -> tuple[int, int]:
    length = (x + 1).bit_length() - 1
    return length, x + 1 - (1 << length)


def _offset(total: int) -> int:
    return (total - 1) * (1 << total) + 1


def pair2(x: int, y: int) -> int:
    if x < 0 or y < 0:
        raise ValueError("pairing is defined on naturals")
    lx, vx = _split(x)
    ly, vy = _split(y)
    total = lx + ly
    return _offset(total) + lx * (1 << total) + (vx << ly) + vy


def unpair2(n: int) -> tuple[int, int]:
    if n < 0:
        raise ValueError("pairing is defined on naturals")
    # offset(T) <= n < offset(T + 1); offset grows like T * 2**T
    total = max(0, n.bit_length() - max(1, n.bit_length().bit_length()) - 1)
    while _offset(total) > n:
        total -= 1
    while _offset(total + 1) <= n:
        total += 1
    r = n - _offset(total)
    lx, rest = divmod(r, 1 << total)
    ly = total - lx
    vx, vy = divmod(rest, 1 << ly)
    return vx + (1 << lx) - 1, vy + (1 << ly) - 1


def pair(xs: Sequence[int]) -> int:
    """Right-nested tuple code; arity is fixed by the caller."""
    if not xs:
        return 0
    out = xs[-1]
    for x in reversed(xs[:-1]):
        out = pair2(x, out)
    return out


def unpair(n: int, arity: int) -> tuple[int, ...]:
    if arity == 0:
        return ()
    out = []
    for _ in range(arity - 1):
        x, n = unpair2(n)
        out.append(x)
    out.append(n)
    return tuple(out)


def proj(i: int, n: int, arity: int = 3) -> int:
    """The i-th component (1-based) of the arity-tuple coded by n."""
    if not 1 <= i <= arity:
        raise ValueError(f"projection {i} out of range for arity {arity}")
    return unpair(n, arity)[i - 1]


def pair_list(xs: Sequence[int]) -> int:
    """Length-prefixed code for variable-length lists; bijective on lists."""
    return pair2(len(xs), pair(xs)) if xs else 0


def unpair_list(n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    length, body = unpair2(n)
    if length == 0:
        # pair2(0, k) for k > 0 is not the image of any list
        raise ValueError(f"{n} does not code a list")
    return unpair(body, length)
