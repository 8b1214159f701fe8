import math

import numpy as np
import pytest

from jonesvol.checks import random_q

# lines printed by test_acceptance.py, replayed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def generic_qs():
    rng = np.random.default_rng(12345)
    return [random_q(rng, off_circle=bool(s % 2)) for s in range(6)]


def lobachevsky_quad(theta: float) -> float:
    """-int_0^theta log|2 sin x| dx by adaptive quadrature (independent of the series)."""
    from scipy.integrate import quad

    f = lambda x: -math.log(abs(2 * math.sin(x)))
    # split at the log singularities x = k pi inside the interval
    lo, hi = sorted((0.0, theta))
    pts = [lo] + [k * math.pi for k in range(math.ceil(lo / math.pi), math.floor(hi / math.pi) + 1)
                  if lo < k * math.pi < hi] + [hi]
    total = sum(quad(f, a, b, epsabs=1e-13, epsrel=1e-13, limit=200)[0] for a, b in zip(pts, pts[1:]))
    return total if theta >= 0 else -total


def kashaev_sine_sum(N: int) -> float:
    """sum_j prod_{k<=j} 4 sin^2(k pi / N), figure-eight at q = exp(2 pi i/N)."""
    total, running = 1.0, 1.0
    for k in range(1, N):
        running *= 4 * math.sin(k * math.pi / N) ** 2
        total += running
    return total
