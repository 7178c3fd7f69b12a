import math

import numpy as np
import pytest

from cmorbits.arith import ImaginaryQuadraticField, is_fundamental_discriminant, kronecker

# 20 fundamental discriminants whose unit group is {+1, -1}
DISCS = [-7, -8, -11, -15, -19, -20, -23, -24, -31, -35,
         -39, -40, -43, -47, -51, -52, -55, -56, -59, -67]


def analytic_class_number(D, terms=400_000):
    """(w / 2 pi) sqrt|D| sum_{n <= terms} chi_D(n) / n, as a float."""
    period = np.array([kronecker(D, n) for n in range(abs(D))], dtype=float)
    n = np.arange(1, terms + 1)
    chi = period[n % abs(D)]
    w = {-3: 6, -4: 4}.get(D, 2)
    return w / (2 * math.pi) * math.sqrt(-D) * float(np.sum(chi / n))


def brute_forms(D):
    """Primitive reduced forms of discriminant D by a wide, unoptimised search."""
    out = []
    bound = -D
    for a in range(1, bound + 1):
        for b in range(-a, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if not (abs(b) <= a <= c):
                continue
            if (abs(b) == a or a == c) and b < 0:
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
    return out


def fundamental_discs(limit):
    return [D for D in range(-3, -limit - 1, -1) if is_fundamental_discriminant(D)]


@pytest.fixture(scope="session")
def q7():
    return ImaginaryQuadraticField(-7)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import VERDICTS
    except ImportError:
        return
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(VERDICTS):
        terminalreporter.write_line(VERDICTS[n])
