"""Acceptance run: one PASS/FAIL line per criterion, with the measured numbers.

Lines are printed by each test and repeated in the pytest terminal summary.
"""

import collections
import random
import time

from ordforge import ord_core as C, ord_ext as E
from ordforge.descent import run_trials
from ordforge.formula import decode, encode, to_sexpr
from ordforge.formula.syntax import free_set_vars
from ordforge.formula.syntaxfns import bicond_h, close_g, subst_f
from ordforge.proof_kernel import build_reflection, build_truth_intro, check, sample_proof
from ordforge.sampling import random_coeff, random_ext, random_ord
from ordforge.theory_gen.theories import tarski, tarski_kk, tarski_ordered, z1i

import oracles

K, L = E.KAPPA, E.LAMBDA
EPS0 = C.veblen(C.ONE, C.ZERO)


def _laws(cmp, xs, ys, zs) -> int:
    bad = 0
    for a, b in zip(xs, ys):
        x = cmp(a, b)
        if cmp(b, a).value != -x.value or (x is C.EQ) != (a is b) or cmp(a, a) is not C.EQ:
            bad += 1
    for a, b, d in zip(xs, ys, zs):
        if cmp(a, b) is C.LT and cmp(b, d) is C.LT and cmp(a, d) is not C.LT:
            bad += 1
    return bad


def test_c01_order_laws(report):
    t0 = time.perf_counter()
    rng = random.Random(101)
    n = 10_000
    ords = [[random_ord(rng, 3) for _ in range(n)] for _ in range(3)]
    exts = [[random_ext(rng, K if i % 2 else L, 3) for i in range(n)] for _ in range(3)]
    bad = _laws(C.compare, *ords) + _laws(E.ext_compare, *exts)
    dt = time.perf_counter() - t0
    ok = bad == 0 and dt < 10
    report(1, ok, f"violations={bad} on 2x{n} pairs + 2x{n} triples, {dt:.2f}s (< 10s)")
    assert ok


def test_c02_oracle_exhaustive(report):
    xs = [C.decode_nat(i) for i in range(2000)]
    ts = [oracles.as_tuple(x) for x in xs]
    bad = 0
    for a, ta in zip(xs, ts):
        for b, tb in zip(xs, ts):
            if C.compare(a, b).value != oracles.oracle_cmp(ta, tb):
                bad += 1
    report(2, bad == 0, f"mismatches={bad} over {len(xs) ** 2} pairs (codes < 2000)")
    assert bad == 0


def test_c03_fixed_point(report):
    rng = random.Random(103)
    done = bad = 0
    while done < 1000:
        a, lo, m = random_ord(rng, 3), random_ord(rng, 3), random_ord(rng, 3)
        if C.compare(lo, a) is not C.LT:
            continue
        v = C.veblen(a, m)
        w = C.veblen(lo, v)
        if w is not v or C.render(w) != C.render(v):
            bad += 1
        done += 1
    report(3, bad == 0, f"failures={bad} of {done} samples")
    assert bad == 0


def test_c04_gamma_tower(report):
    gs = [C.gamma(n) for n in range(7)]
    inc = all(C.compare(x, y) is C.LT for x, y in zip(gs, gs[1:]))
    exact = C.gamma(1) is C.veblen(C.ONE, C.ZERO)
    report(4, inc and exact, f"increasing n<=6: {inc}; gamma(1) = phi_1(0): {exact}")
    assert inc and exact


def test_c05_kappa_omega_pow(report):
    bad = 0
    dense = [E.coeff_unrank(i) for i in range(1000)]
    structural = []
    for n in range(1000):
        try:
            structural.append(E.decode_coeff(n))
        except C.NotationError:
            pass
    for a in dense + structural:
        if E.kappa_omega_pow(a) is not oracles.kappa_omega_unfold(a):
            bad += 1
    report(5, bad == 0, f"mismatches={bad}; dense ranks < 1000 and {len(structural)} structural codes < 1000")
    assert bad == 0


def _indices(f):
    lexp = f.scheme is E.Scheme.EXP_LIMIT and f.base.system != K
    for n in range(5):
        if not lexp:
            yield E.cnat(n)
        else:
            yield E.ext_monomial(E.LEXP, 0, E.cnat(n)) if n else E.ext_zero(E.LEXP)
    yield E.COMEGA if not lexp else E.ext_monomial(E.LEXP, 0, E.COMEGA)


def test_c06_canonical_sequences(report):
    rng = random.Random(106)
    kcases, ltypes = collections.Counter(), collections.Counter()
    bad = samples = 0
    for i in range(1000):
        a = random_ext(rng, K if i % 2 == 0 else L, 3)
        f = E.canonical_seq(a)
        if a.system == K:
            kcases[f.case] += 1
        else:
            ltypes[E.type_of(a).k] += 1
        if f.kind == "empty":
            continue
        xs = list(f.elements) if f.kind == "finite" else \
            [E.sample_canonical(f, g) for g in _indices(f) if E._index_ok(f, g)]
        samples += len(xs)
        bad += sum(E.ext_compare(x, a) is not C.LT for x in xs)
        bad += sum(E.ext_compare(x, y) is not C.LT for x, y in zip(xs, xs[1:]))
    need_k = ["Empty", "Finite", "ExpSuccessor", "ExpLimit", "CoeffLimit"]
    cover = all(kcases[c] >= 20 for c in need_k) and all(ltypes[t] >= 20 for t in range(4))
    ok = bad == 0 and samples > 0 and cover
    hits = ", ".join(f"{c}={kcases[c]}" for c in need_k) + "; " + \
        ", ".join(f"type{t}={ltypes[t]}" for t in range(4))
    report(6, ok, f"violations={bad} over {samples} samples; {hits}")
    assert ok


def test_c07_delta_towers(report):
    ds = [E.delta(n) for n in range(5)]
    d_inc = all(E.fv_compare(x, y) is C.LT for x, y in zip(ds, ds[1:]))
    t_inc = all(E.fv_compare(E.tilde_delta(n, k), E.tilde_delta(n + 1, k)) is C.LT
                for k in range(4) for n in range(4))
    exact = E.delta(1) is E.fv_veblen([E.CONE, E.CZERO, E.CZERO])
    ok = d_inc and t_inc and exact
    report(7, ok, f"delta increasing: {d_inc}; tilde_delta increasing (k<=3): {t_inc}; "
                  f"delta(1) = fv(1,0,0): {exact}")
    assert ok


def test_c08_arithmetization(report):
    rng = random.Random(108)
    fs = [oracles.random_formula(rng, 4) for _ in range(10_000)]
    rt_bad = sum(decode(encode(f)) is not f for f in fs)
    fgh_bad = 0
    for f in fs:
        s, n = to_sexpr(f), encode(f)
        i, k, a = rng.randrange(5), rng.randrange(30), rng.randrange(20)
        want_h = oracles.oracle_bicond(s, a, 1, encode)
        fgh_bad += subst_f(n, i, k) != encode(oracles.oracle_subst(s, i, k))
        fgh_bad += close_g(n, i) != encode(oracles.oracle_close(s, i))
        fgh_bad += bicond_h(a, n) != (0 if want_h is None else encode(want_h))
    junk = []
    while len(junk) < 1000:
        n = rng.randrange(1 << rng.randrange(2, 40))
        if decode(n) is None:
            junk.append(n)
    zero_bad = sum(subst_f(n, 1, 3) != 0 or close_g(n, 1) != 0 for n in junk)
    ok = rt_bad == fgh_bad == zero_bad == 0
    report(8, ok, f"round-trip failures={rt_bad}/10000; f/g/h mismatches={fgh_bad}/10000 cases; "
                  f"nonzero on non-formula codes={zero_bad}/1000")
    assert ok


def test_c09_theory_enumerations(report):
    z = z1i()
    details, ok = [], True
    base_prefix = [z.ax(i) for i in range(10_000)]
    for th in (z, tarski(z), tarski_ordered(z), tarski_kk(z)):
        codes = [th.ax(i) for i in range(10_000)]
        fails = sum(not th.is_axiom(n) for n in codes)
        seen = {th.match_axiom(decode(n))[0] for n in set(codes) if th.is_axiom(n)}
        missing = {f.name for f in th.families} - seen
        again = 0 if th is z else sum(not th.is_axiom(n) for n in base_prefix)
        this_ok = fails == 0 and not missing and again == 0
        ok &= this_ok
        details.append(f"{th.name}: fails={fails} missing={sorted(missing)} base-not-reappearing={again}")
    report(9, ok, "; ".join(details))
    assert ok


def _reflection_formulas(rng, z, n):
    out = []
    while len(out) < n:
        f = oracles.random_formula(rng, 3)
        if z.in_language(f) and not free_set_vars(f) and f not in out:
            out.append(f)
    return out


def test_c10_kernel(report):
    t0 = time.perf_counter()
    rng = random.Random(110)
    z = z1i()
    t = tarski(z)
    tis = [build_truth_intro(sample_proof(z, rng), z) for _ in range(100)]
    refl = [build_reflection(z, f) for f in _reflection_formulas(rng, z, 20)]
    accepted = sum(check(p, t).ok for p in tis + refl)
    rejected = relicensed = unexplained = 0
    pool = tis + refl
    for i in range(1000):
        q, _, _ = oracles.mutate(pool[i % len(pool)], rng)
        if not check(q, t).ok:
            rejected += 1
        elif oracles.recheck(q, t):
            relicensed += 1
        else:
            unexplained += 1
    dt = time.perf_counter() - t0
    ok = accepted == 120 and unexplained == 0 and rejected >= 950 and dt < 60
    report(10, ok, f"accepted={accepted}/120; mutations rejected={rejected} re-licensed={relicensed} "
                   f"unexplained={unexplained} of 1000; {dt:.1f}s (< 60s)")
    assert ok


def test_c11_descent(report):
    g = run_trials([EPS0], 1000, seed=111)

    def kappa_start(r):
        return E.ext_monomial(K, random_coeff(r, 2), E.CONE)

    k = run_trials(kappa_start, 1000, seed=112)
    # run_trials raises DescentError on any step that fails to decrease
    done = sum(w.terminated for w in g + k)
    longest = max(w.steps for w in g + k)
    ok = done == 2000
    report(11, ok, f"terminated={done}/2000 (1000 from phi_1(0), 1000 from kappa^a); longest walk={longest}")
    assert ok
