"""Exit criteria for the package, one test per criterion.

Each criterion runs with cold caches, is timed against its budget, and
records a one-line PASS/FAIL verdict that is printed in the pytest terminal
summary.  Running this file directly prints the same lines.
"""

import itertools
import math
import random
import subprocess
import sys
import time

import pytest

from cmorbits import arith, volcano as volcano_mod
from cmorbits.arith import ImaginaryQuadraticField, class_number, factorize
from cmorbits.counts import UnsupportedFieldError, count_cm_pair, count_gamma0_cusps, count_gl2_order
from cmorbits.oracles import enumerate_walks, gamma0_orbit_oracle
from cmorbits.volcano import NOT_COVERED, WalkQuery, build_truncated_volcano, count_walks_dp, rk, rk_prime_closed

from conftest import DISCS, analytic_class_number, fundamental_discs

VERDICTS = {}
SYMBOLS = (-1, 0, 1)


def _cold():
    volcano_mod._walks.cache_clear()
    arith._factor_items.cache_clear()
    arith.class_number.cache_clear()


def _record(n, name, ok, elapsed, budget, detail=""):
    within = budget is None or elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    limit = f" (< {budget:g} s)" if budget else ""
    VERDICTS[n] = f"[{verdict}] criterion {n}: {name}: {elapsed:.2f} s{limit}{'; ' + detail if detail else ''}"
    assert ok, detail
    assert within, f"took {elapsed:.2f} s, budget {budget} s"


def dp(p, x, a, b, c):
    return count_walks_dp(WalkQuery(p, x, a, b, c))


def test_criterion_1_rk_three_way_agreement():
    _cold()
    t = time.perf_counter()
    bad = []
    enumerated = compared = 0
    for p, x in itertools.product((2, 3), SYMBOLS):
        g = build_truncated_volcano(p, x, 6)
        for a, b, c in itertools.product(range(3), range(3), range(5)):
            enumerated += 1
            if enumerate_walks(g, a, b, c) != dp(p, x, a, b, c):
                bad.append(("enumerate", p, x, a, b, c))
    for p, x in itertools.product((2, 3, 5), SYMBOLS):
        for a, b, c in itertools.product(range(5), range(5), range(9)):
            q = WalkQuery(p, x, a, b, c)
            v = rk_prime_closed(q)
            if v is NOT_COVERED:
                continue
            compared += 1
            if v != count_walks_dp(q):
                bad.append(("closed", p, x, a, b, c))
    elapsed = time.perf_counter() - t
    _record(1, "enumerate = DP = closed form", not bad, elapsed, 10,
            f"{enumerated} enumerated, {compared} closed-form queries, mismatches {bad[:5]}")


def test_criterion_2_conservation():
    _cold()
    t = time.perf_counter()
    bad = []
    for p, x, a, c in itertools.product((2, 3, 5, 7), SYMBOLS, range(5), range(1, 7)):
        s = sum(dp(p, x, a, b, c) for b in range(a + c + 1))
        if s != (p + 1) * p ** (c - 1):
            bad.append((p, x, a, c, s))
    elapsed = time.perf_counter() - t
    _record(2, "sum over end levels = (p+1) p^(c-1)", not bad, elapsed, 5, f"mismatches {bad[:5]}")


def test_criterion_3_gamma0_vs_oracle():
    _cold()
    t = time.perf_counter()
    bad = [N for N in range(1, 301) if count_gamma0_cusps(N).total != gamma0_orbit_oracle(N)]
    spots = {N: count_gamma0_cusps(N).total for N in (1, 4, 9)}
    elapsed = time.perf_counter() - t
    ok = not bad and spots == {1: 1, 4: 3, 9: 3}
    _record(3, "Gamma_0(N) divisor sum = orbit oracle, N <= 300", ok, elapsed, 10, f"spots {spots}, mismatches {bad[:5]}")


def test_criterion_4_bianchi_specialisation():
    _cold()
    t = time.perf_counter()
    assert len(DISCS) == 20
    bad = [D for D in DISCS if count_cm_pair(ImaginaryQuadraticField(D), 1, 1).total != class_number(D)]
    spots = {D: class_number(D) for D in (-23, -47)}
    analytic_bad = []
    for D in fundamental_discs(200):
        if round(analytic_class_number(D)) != class_number(D):
            analytic_bad.append(D)
    elapsed = time.perf_counter() - t
    ok = not bad and not analytic_bad and spots == {-23: 3, -47: 5}
    _record(4, "N(E,E) at conductor 1 = h; h = analytic estimate for |D| <= 200", ok, elapsed, 10,
            f"spots {spots}, mismatches {bad[:5]}, analytic mismatches {analytic_bad[:5]}")


def test_criterion_5_gl2_consistency():
    _cold()
    t = time.perf_counter()
    bad = []
    for D in (-7, -8, -11, -15, -20):
        field = ImaginaryQuadraticField(D)
        for f in range(1, 101):
            if count_cm_pair(field, f, f).total != count_gl2_order(field, f).total:
                bad.append((D, f))
    elapsed = time.perf_counter() - t
    _record(5, "N(E,E) at conductor f = GL_2(O_f) convolution, f <= 100", not bad, elapsed, 60, f"mismatches {bad[:5]}")


def test_criterion_6_multiplicativity():
    _cold()
    t = time.perf_counter()
    rng = random.Random(6)
    field = ImaginaryQuadraticField(-7)
    bad = []
    for _ in range(200):
        a, b, N = (rng.randint(1, 1000) for _ in range(3))
        fa, fb, fn = factorize(a), factorize(b), factorize(N)
        primes = set(fa.factors) | set(fb.factors) | set(fn.factors)
        local = math.prod(rk(field, p ** fa.exponent(p), p ** fb.exponent(p), p ** fn.exponent(p)) for p in primes)
        if rk(field, a, b, N) != local:
            bad.append((a, b, N))
    elapsed = time.perf_counter() - t
    _record(6, "r_K is the product of its prime-local values", not bad, elapsed, 5, f"mismatches {bad[:5]}")


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "cmorbits", *args], capture_output=True, check=True).stdout


def test_criterion_7_symmetry_and_determinism():
    _cold()
    t = time.perf_counter()
    bad = []
    for D in (-7, -23):
        field = ImaginaryQuadraticField(D)
        for c in range(1, 31):
            for cp in range(c + 1, 31):
                if count_cm_pair(field, c, cp).total != count_cm_pair(field, cp, c).total:
                    bad.append((D, c, cp))
    runs = [
        ("count", "--disc", "-7", "--cond", "4", "--cond2", "6", "--format", "json"),
        ("table", "--disc", "-23", "--max", "6"),
        ("volcano", "--prime", "3", "--symbol", "1", "--depth", "2"),
    ]
    nondeterministic = [r[0] for r in runs if _cli(*r) != _cli(*r)]
    elapsed = time.perf_counter() - t
    ok = not bad and not nondeterministic
    _record(7, "symmetry over 30x30 grid; byte-identical CLI output", ok, elapsed, None,
            f"asymmetric {bad[:5]}, nondeterministic {nondeterministic}")


def test_criterion_8_field_restriction():
    t = time.perf_counter()
    failures = []
    for D in (-3, -4):
        field = ImaginaryQuadraticField(D)
        for call in (lambda: count_cm_pair(field, 1, 1), lambda: count_gl2_order(field, 2)):
            try:
                value = call()
                failures.append((D, value))
            except UnsupportedFieldError as e:
                if e.code != "UNSUPPORTED_FIELD":
                    failures.append((D, e.code))
        proc = subprocess.run([sys.executable, "-m", "cmorbits", "count", "--disc", str(D), "--cond", "1", "--cond2", "1"],
                              capture_output=True, text=True)
        if proc.returncode != 3 or proc.stdout or "UNSUPPORTED_FIELD" not in proc.stderr:
            failures.append((D, "cli", proc.returncode))
    elapsed = time.perf_counter() - t
    _record(8, "D in {-3, -4} raises UNSUPPORTED_FIELD", not failures, elapsed, None, f"failures {failures}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
