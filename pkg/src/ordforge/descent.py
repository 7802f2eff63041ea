"""Random descending walks, an empirical check that the implemented orders are well-founded.

Each step picks a kind of move uniformly, then a strictly smaller neighbour of that kind:

* binary Veblen terms: ``a[r]`` for r in 0..2, the predecessor, and proper subterms;
* kappa/lambda terms: canonical-sequence elements at small indices, ``h(a)``,
  the predecessor, and proper run prefixes.

A walk ends at 0.  Every step is re-checked with the active compare.
"""

from __future__ import annotations

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Sequence

from . import ord_core, ord_ext
from .ord_core import OrdTerm, TermClass
from .ord_ext import ExtTerm
from .sampling import small_index


class DescentError(RuntimeError):
    pass


@dataclass(frozen=True)
class Walk:
    start: object
    steps: int
    terminated: bool


def ord_moves(a: OrdTerm, rng: random.Random) -> list[list[OrdTerm]]:
    out: list[list[OrdTerm]] = []
    cls = ord_core.classify(a)
    if cls is TermClass.LIMIT:
        out.append([ord_core.fund_seq(a, r) for r in range(3)])
    elif cls is TermClass.SUCCESSOR:
        out.append([ord_core.predecessor(a)])
    out.append([s for s in ord_core.subterms(a) if ord_core.compare(s, a) is ord_core.LT])
    return [m for m in out if m]


def ext_moves(a: ExtTerm, rng: random.Random) -> list[list[ExtTerm]]:
    if not a.runs:
        return []
    f = ord_ext.canonical_seq(a)
    out = [[ord_ext.h_of(a)]]
    if f.kind == "finite":
        out.append(list(f.elements))
    elif f.kind == "indexed":
        g = small_index(rng, f)
        if g is not None:
            out.append([ord_ext.sample_canonical(f, g)])
    if ord_ext.ext_class(a) is TermClass.SUCCESSOR:
        out.append([ord_ext.ext_pred(a)])
    out.append([ExtTerm(a.system, a.runs[:k]) for k in range(1, len(a.runs))])
    out = [[x for x in m if ord_ext.ext_compare(x, a) is ord_core.LT] for m in out]
    return [m for m in out if m]


def walk(start, rng: random.Random, max_steps: int = 100_000) -> Walk:
    """One descending walk from `start` (an OrdTerm or an ExtTerm)."""
    if isinstance(start, ExtTerm):
        moves, cmp, zero = ext_moves, ord_ext.ext_compare, lambda x: not x.runs
    else:
        moves, cmp, zero = ord_moves, ord_core.compare, lambda x: not x.summands
    a, steps = start, 0
    while not zero(a):
        if steps >= max_steps:
            return Walk(start, steps, False)
        options = moves(a, rng)
        if not options:
            raise DescentError(f"no smaller neighbour found for a nonzero term after {steps} steps")
        b = rng.choice(rng.choice(options))
        if cmp(b, a) is not ord_core.LT:
            raise DescentError("a step failed to decrease")
        a, steps = b, steps + 1
    return Walk(start, steps, True)


def run_trials(starts: Sequence | Callable[[random.Random], object], trials: int, seed: int,
               max_steps: int = 100_000, workers: int = 1) -> list[Walk]:
    """`trials` walks; trial i uses its own RNG seeded from (seed, i), so results are order-free."""

    def one(i: int) -> Walk:
        rng = random.Random(f"{seed}:{i}")
        s = starts(rng) if callable(starts) else starts[i % len(starts)]
        return walk(s, rng, max_steps)

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            return list(ex.map(one, range(trials)))
    return [one(i) for i in range(trials)]
