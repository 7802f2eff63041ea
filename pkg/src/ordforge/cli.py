"""Command-line entry point: ``ordforge <subcommand> ...``.

Exit status 1 signals a domain error (bad notation, no fundamental sequence,
failed proof check), 2 a usage error.  ``ORDFORGE_SYSTEM`` (g0, kk, lambda)
picks the notation system for code-indexed commands.
"""

from __future__ import annotations

import argparse
import sys
from typing import Callable, Sequence

from . import ord_core, ord_ext
from .descent import DescentError, run_trials
from .formula import encode, pretty
from .formula.godel import numbering_table
from .formula.sexpr import SexprError, parse_formula
from .ord_core import NotationError
from .proof_kernel import ProofError, build_reflection, check, from_text, to_text
from .sampling import random_coeff
from .systems import G0, get_system
from .theory_gen import THEORY_NAMES, theory


class UsageError(Exception):
    pass


def _sys():
    return get_system()


def _term(text: str):
    return _sys().parse(text)


def _g0(text: str) -> ord_core.OrdTerm:
    return ord_core.parse_term(text)


def _show(args, x, sugar: bool = True) -> str:
    """Render a term (g0 terms with numeral/omega sugar), or its code under --codes."""
    if isinstance(x, ord_core.OrdTerm):
        return str(G0.encode(x)) if args.codes else ord_core.render(x, sugar=sugar)
    s = _sys()
    return str(s.encode(x)) if args.codes else s.render(x)


def _nat(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"expected a natural number, got {text!r}") from None
    if n < 0:
        raise UsageError(f"expected a natural number, got {text!r}")
    return n


# ---------------------------------------------------------------------------
# commands

def cmd_parse(args) -> list[str]:
    return [_show(args, _term(args.term), sugar=False)]


def cmd_norm(args) -> list[str]:
    return [_show(args, _term(args.term))]


def cmd_cmp(args) -> list[str]:
    s = _sys()
    return [s.compare(_term(args.a), _term(args.b)).name]


def _binary(op: Callable) -> Callable:
    def run(args) -> list[str]:
        return [_show(args, op(_g0(args.a), _g0(args.b)))]
    return run


def cmd_add(args) -> list[str]:
    s = _sys()
    if s is G0:
        return [_show(args, ord_core.add(_g0(args.a), _g0(args.b)))]
    return [_show(args, ord_ext.ext_add(_term(args.a), _term(args.b)))]


def cmd_wpow(args) -> list[str]:
    return [_show(args, ord_core.omega_pow(_g0(args.a)))]


def cmd_fs(args) -> list[str]:
    a = _g0(args.term)
    return [_show(args, ord_core.fund_seq(a, n)) for n in args.n]


def cmd_gamma(args) -> list[str]:
    return [_show(args, ord_core.gamma(args.n))]


def _coeff_out(args, c: ord_ext.CoeffTerm) -> str:
    return str(ord_ext.encode_coeff(c)) if args.codes else ord_ext.render_coeff(c)


def cmd_delta(args) -> list[str]:
    return [_coeff_out(args, ord_ext.delta(args.n))]


def cmd_tdelta(args) -> list[str]:
    return [_coeff_out(args, ord_ext.tilde_delta(args.n, args.k))]


def _index(f: ord_ext.CanonicalFamily, text: str):
    if f.scheme is ord_ext.Scheme.EXP_LIMIT and f.base.system != ord_ext.KAPPA:
        return ord_ext.parse_ext(text, ord_ext.LEXP)
    return ord_ext.parse_coeff(text)


def cmd_canon(args) -> list[str]:
    s = _sys()
    if s is G0:
        a = _g0(args.term)
        cls = ord_core.classify(a)
        lines = [f"case: {cls.value}"]
        if args.sample is not None:
            lines.append(_show(args, ord_core.fund_seq(a, _nat(args.sample))))
        return lines
    a = s.parse(args.term)
    f = ord_ext.canonical_seq(a)
    lines = [f"case: {f.case}", f"type: {ord_ext.type_of(a).k}"]
    if a.runs:
        lines.append(f"h: {_show(args, ord_ext.h_of(a))}")
    if args.sample is not None:
        g = None if f.kind != "indexed" else _index(f, args.sample)
        lines.append(_show(args, ord_ext.sample_canonical(f, g)))
    return lines


def cmd_code(args) -> list[str]:
    s = _sys()
    return [str(s.encode(_term(args.term)))]


def cmd_decode(args) -> list[str]:
    s = _sys()
    return [s.render(s.decode(args.n))]


def cmd_theory(args) -> list[str]:
    th = theory(args.name)
    if args.is_axiom is not None:
        return ["true" if th.is_axiom(args.is_axiom) else "false"]
    out = []
    for i in range(args.axioms):
        f = th.axiom_formula(i)
        m = th.match_axiom(f)
        out.append(f"{i}\t{m[0] if m else '?'}\t{encode(f)}\t{pretty(f)}")
    return out


def cmd_dump_numbering(args) -> list[str]:
    return ["\t".join("" if x is None else str(x) for x in row) for row in numbering_table()]


def cmd_prove_check(args) -> list[str]:
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    name, proof = from_text(text)
    th = theory(args.theory or name)
    v = check(proof, th)
    if not v.ok:
        raise ProofError(str(v))
    return [f"ok {proof.size()} nodes: {pretty(proof.conclusion)}"]


def cmd_gen_reflection(args) -> list[str]:
    s = theory(args.theory)
    f = parse_formula(args.formula)
    proof = build_reflection(s, f)
    return [to_text(proof, f"tarski({s.name})").rstrip("\n")]


def cmd_descent(args) -> list[str]:
    s = _sys()
    if args.start is not None:
        starts = [s.parse(args.start)]
    elif s is G0:
        starts = [ord_core.veblen(ord_core.ONE, ord_core.ZERO)]
    else:
        system = ord_ext.KAPPA if s.name == "kk" else ord_ext.LAMBDA

        def starts(rng):
            c = random_coeff(rng, 2)
            e = c if system == ord_ext.KAPPA else ord_ext.ext_monomial(ord_ext.LEXP, 0, c) if c.summands \
                else ord_ext.ext_zero(ord_ext.LEXP)
            return ord_ext.ext_monomial(system, e, ord_ext.CONE)
    walks = run_trials(starts, args.trials, args.seed, args.max_steps, args.workers)
    bad = [w for w in walks if not w.terminated]
    if bad:
        raise DescentError(f"{len(bad)} walks hit the step limit of {args.max_steps}")
    return [str(w.steps) for w in walks]


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ordforge", description="Ordinal notations, truth theories and proof checking.")
    p.add_argument("--codes", action="store_true", help="print notation codes instead of terms")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help_: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--codes", action="store_true", default=argparse.SUPPRESS, help=argparse.SUPPRESS)
        return sp

    add("parse", cmd_parse, "parse a term and print its normal form").add_argument("term")
    add("norm", cmd_norm, "print the normal form with omega/epsilon sugar").add_argument("term")
    sp = add("cmp", cmd_cmp, "compare two terms: LT, EQ or GT")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("add", cmd_add, "a + b")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("mul", _binary(ord_core.mul), "a * b (g0)")
    sp.add_argument("a")
    sp.add_argument("b")
    add("wpow", cmd_wpow, "omega^a (g0)").add_argument("a")
    sp = add("phi", _binary(ord_core.veblen), "phi_a(b) (g0)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp = add("fs", cmd_fs, "fundamental sequence elements a[n] (g0)")
    sp.add_argument("term")
    sp.add_argument("n", type=int, nargs="+")
    add("gamma", cmd_gamma, "gamma_n: gamma_0 = 1, gamma_{n+1} = phi(gamma_n, 0)").add_argument("n", type=int)
    add("delta", cmd_delta, "delta_n below kappa").add_argument("n", type=int)
    sp = add("tdelta", cmd_tdelta, "tilde-delta_n for stride k")
    sp.add_argument("n", type=int)
    sp.add_argument("k", type=int)
    sp = add("canon", cmd_canon, "canonical sequence case, type and an optional sample")
    sp.add_argument("term")
    sp.add_argument("--sample", metavar="G", help="index term (a natural for g0)")
    add("code", cmd_code, "code of a term in the active system").add_argument("term")
    add("decode", cmd_decode, "term with the given code").add_argument("n", type=int)
    sp = add("theory", cmd_theory, "enumerate or query a theory's axioms")
    sp.add_argument("name", help=", ".join(THEORY_NAMES))
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--axioms", type=int, default=10, metavar="N")
    g.add_argument("--is-axiom", type=int, metavar="CODE")
    add("dump-numbering", cmd_dump_numbering, "the Goedel numbering table")
    sp = add("prove-check", cmd_prove_check, "check a proof file")
    sp.add_argument("file")
    sp.add_argument("--theory", help="defaults to the theory named in the file")
    sp = add("gen-reflection", cmd_gen_reflection, "emit a Prov-reflection proof in Tarski(S)")
    sp.add_argument("--formula", required=True, help="S-expression formula, e.g. '(= v1 v1)'")
    sp.add_argument("--theory", default="z1i", help="the base theory S")
    sp = add("descent", cmd_descent, "random descending walks; prints walk lengths")
    sp.add_argument("--start")
    sp.add_argument("--trials", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--max-steps", type=int, default=100_000)
    sp.add_argument("--workers", type=int, default=1)
    return p


DOMAIN_ERRORS = (NotationError, ProofError, SexprError, DescentError, ValueError, ArithmeticError)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        for line in args.func(args):
            print(line)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"ordforge: error: {exc}", file=sys.stderr)
        return 2
    except DOMAIN_ERRORS as exc:
        print(f"ordforge: {exc}", file=sys.stderr)
        return 1
    except RecursionError:
        print("ordforge: term too deep", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
