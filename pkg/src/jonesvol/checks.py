"""Invariant suites run by ``jonesvol check``.

Each suite returns a list of :class:`CheckResult`; the command passes iff all
of them do.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from . import braid as br
from .asympt import alexander_limit_check
from .hypgeom import dilog, lobachevsky
from .invariants import (
    Method,
    colored_jones,
    fig8_invariant,
    skein_residual_N2,
)
from .tensorq import QExponent, verify_mu_commutation, verify_trace_axiom, verify_yang_baxter


@dataclass(frozen=True)
class CheckResult:
    name: str
    residual: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tolerance)


def random_q(rng: np.random.Generator, off_circle: bool) -> QExponent:
    """Generic q: on the unit circle, or with |log|q|| <= 0.2 when off it."""
    phase = rng.uniform(0.2, 2 * math.pi - 0.2)
    modulus = rng.uniform(-0.2, 0.2) if off_circle else 0.0
    return QExponent(complex(modulus, phase))


def suite_yb(color_max: int = 6, samples: int = 20, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    qs = [random_q(rng, off_circle=bool(s % 2)) for s in range(samples)]
    out = []
    for name, fn in (("yang_baxter", verify_yang_baxter),
                     ("mu_commutation", verify_mu_commutation),
                     ("trace_axiom", verify_trace_axiom)):
        worst = max(fn(N, q) for N in range(1, color_max + 1) for q in qs)
        out.append(CheckResult(name, worst, 1e-10))
    return out


def suite_markov(braids: int = 20, moves: int = 10, colors=(2, 3), seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    q = QExponent(complex(0.1, 1.3))
    worst = 0.0
    for t in range(braids):
        b = br.random_braid(rng)
        b2 = br.random_markov_walk(b, moves, seed=seed * 100003 + t)
        for N in colors:
            j1 = colored_jones(b, N, q).value
            j2 = colored_jones(b2, N, q).value
            worst = max(worst, abs(j1 - j2) / abs(j1))
    return [CheckResult("markov_invariance", worst, 1e-8)]


def suite_skein(samples: int = 10, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    triples = {
        "skein_trefoil_unknot_hopf": (br.TREFOIL, br.parse_braid("1"), br.parse_braid("1 1")),
        "skein_unknot_unknot_unlink": (br.parse_braid("1"), br.parse_braid("-1"), br.BraidWord.identity(2)),
    }
    qs = [random_q(rng, off_circle=bool(s % 2)) for s in range(samples)]
    return [CheckResult(name, max(skein_residual_N2(t, q) for q in qs), 1e-10)
            for name, t in triples.items()]


def suite_lobachevsky(samples: int = 1000, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    thetas = rng.uniform(-10, 10, samples)
    L = lobachevsky
    odd = max(abs(L(t) + L(-t)) for t in thetas)
    period = max(abs(L(t + math.pi) - L(t)) for t in thetas)
    double = max(abs(L(2 * t) - 2 * L(t) - 2 * L(t + math.pi / 2)) for t in thetas)
    special = abs(L(5 * math.pi / 6) + 1.5 * L(math.pi / 3))
    return [CheckResult("lobachevsky_odd", odd, 1e-10),
            CheckResult("lobachevsky_period", period, 1e-10),
            CheckResult("lobachevsky_double_angle", double, 1e-10),
            CheckResult("lobachevsky_5pi_6", special, 1e-12)]


def suite_dilog(samples: int = 200, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    at_one = abs(dilog(1) - math.pi ** 2 / 6)
    small = [complex(*rng.uniform(-0.35, 0.35, 2)) for _ in range(samples)]
    taylor = max(abs(dilog(z) - sum(z ** n / n ** 2 for n in range(1, 201))) for z in small)
    wide = [complex(*rng.normal(0, 3, 2)) for _ in range(samples)]
    wide = [z for z in wide if abs(z.imag) > 1e-6]
    inversion = max(abs(dilog(z) + dilog(1 / z) + math.pi ** 2 / 6 + 0.5 * np.log(-z) ** 2)
                    for z in wide)
    return [CheckResult("dilog_at_one", at_one, 1e-12),
            CheckResult("dilog_taylor", taylor, 1e-10),
            CheckResult("dilog_inversion", inversion, 1e-10)]


def suite_fig8_formulas(color_max: int = 8, samples: int = 5, seed: int = 0) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    qs = [random_q(rng, off_circle=bool(s % 2)) for s in range(samples)]
    methods = [Method.TANGLE_SCALAR, Method.FIG8_DOUBLE_SUM, Method.FIG8_PRODUCT, Method.FIG8_SINGLE_SUM]
    worst = 0.0
    for N in range(2, color_max + 1):
        for q in qs:
            vals = [fig8_invariant(N, q, m).value for m in methods]
            for i in range(len(vals)):
                for j in range(i):
                    worst = max(worst, abs(vals[i] - vals[j]) / abs(vals[j]))
    kashaev = max(abs(fig8_invariant(N, QExponent.root_of_unity(N), Method.TANGLE_SCALAR).value - want)
                  for N, want in ((2, 5), (3, 13)))
    return [CheckResult("fig8_four_way", worst, 1e-9),
            CheckResult("fig8_kashaev_2_3", kashaev, 1e-10)]


def suite_alexander(theta: float = 0.1) -> list[CheckResult]:
    v1, target = alexander_limit_check(theta, 200)
    v2, _ = alexander_limit_check(theta, 2000)
    d1, d2 = abs(v1 - target), abs(v2 - target)
    return [CheckResult("alexander_N2000", d2, 1e-2),
            CheckResult("alexander_decreasing", d2 - d1, 0.0)]


SUITES = {
    "yb": suite_yb,
    "markov": suite_markov,
    "skein": suite_skein,
    "lobachevsky": suite_lobachevsky,
    "dilog": suite_dilog,
    "fig8-formulas": suite_fig8_formulas,
    "alexander": suite_alexander,
}
