"""Seeded random generators for notation terms (tests, the CLI and the descent harness)."""

from __future__ import annotations

import random

from . import ord_core, ord_ext
from .ord_core import OrdTerm
from .ord_ext import CoeffTerm, ExtTerm


def random_ord(rng: random.Random, depth: int = 2) -> OrdTerm:
    """A random binary-Veblen normal form with nesting at most `depth`."""
    if depth <= 0 or rng.random() < 0.25:
        return ord_core.nat(rng.randrange(4))
    out = ord_core.ZERO
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.3:
            piece = ord_core.nat(rng.randint(1, 3))
        else:
            piece = ord_core.veblen(random_ord(rng, depth - 1), random_ord(rng, depth - 1))
        out = ord_core.add(out, piece)
    return out


def random_coeff(rng: random.Random, depth: int = 2) -> CoeffTerm:
    """A random finitary-Veblen coefficient below kappa."""
    if depth <= 0 or rng.random() < 0.3:
        return ord_ext.cnat(rng.randrange(4))
    out = ord_ext.CZERO
    for _ in range(rng.randint(1, 2)):
        if rng.random() < 0.3:
            piece = ord_ext.cnat(rng.randint(1, 3))
        else:
            args = [random_coeff(rng, depth - 1) for _ in range(rng.randint(1, 3))]
            if not args[0].summands:
                args[0] = ord_ext.CONE
            piece = ord_ext.fv_veblen(args)
        out = ord_ext.cadd(out, piece)
    return out


def _nonzero_coeff(rng: random.Random, depth: int) -> CoeffTerm:
    if rng.random() < 0.5:
        return ord_ext.CONE
    c = random_coeff(rng, depth)
    return c if c.summands else ord_ext.cnat(rng.randint(1, 3))


def _random_exponent(rng: random.Random, system: str, depth: int):
    if system == ord_ext.KAPPA:
        return random_coeff(rng, depth)
    if system == ord_ext.LEXP:
        return rng.randrange(4)
    return random_ext(rng, ord_ext.LEXP, depth, zero_rate=0.2)


def random_ext(rng: random.Random, system: str = ord_ext.KAPPA, depth: int = 2,
               zero_rate: float = 0.06, succ_rate: float = 0.08) -> ExtTerm:
    """A random term of the kappa, lambda or lambda-exponent system.

    0 comes up with rate `zero_rate`; with rate `succ_rate` a trailing +1 makes
    the term a successor, which the plain monomial sums rarely are.
    """
    if rng.random() < zero_rate:
        return ord_ext.ext_zero(system)
    out = ord_ext.ext_zero(system)
    for _ in range(rng.randint(1, 3)):
        exp = _random_exponent(rng, system, depth - 1)
        out = ord_ext.ext_add(out, ord_ext.ext_monomial(system, exp, _nonzero_coeff(rng, depth - 1)))
    if rng.random() < succ_rate:
        out = ord_ext.ext_add(out, ord_ext.ext_one(system))
    return out


def small_index(rng: random.Random, f: ord_ext.CanonicalFamily):
    """A small valid index for an indexed canonical family (None for finite ones)."""
    if f.kind != "indexed":
        return None
    lexp = f.scheme is ord_ext.Scheme.EXP_LIMIT and f.base.system != ord_ext.KAPPA
    picks = []
    for n in range(4):
        if lexp:
            g = ord_ext.ext_monomial(ord_ext.LEXP, 0, ord_ext.cnat(n)) if n else ord_ext.ext_zero(ord_ext.LEXP)
        else:
            g = ord_ext.cnat(n)
        if ord_ext._index_ok(f, g):
            picks.append(g)
    return rng.choice(picks) if picks else None
