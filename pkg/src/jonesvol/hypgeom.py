"""Lobachevsky function, dilogarithm, and ideal tetrahedron volumes."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import BranchCutError, EvaluationError

PI2_6 = math.pi ** 2 / 6
ANGLE_SUM_TOL = 1e-12


@lru_cache(maxsize=None)
def _clausen_coefficients(terms: int = 40) -> tuple[float, ...]:
    """|B_2k| / (2k (2k+1) (2k)!) for k = 1..terms."""
    # Bernoulli numbers via the Akiyama-Tanigawa recurrence, exact
    size = 2 * terms + 1
    bern = []
    a = [Fraction(0)] * (size + 1)
    for m in range(size + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    out = []
    for k in range(1, terms + 1):
        b2k = abs(bern[2 * k])
        out.append(float(b2k / (2 * k * (2 * k + 1) * math.factorial(2 * k))))
    return tuple(out)


def _clausen2(x: float) -> float:
    """Cl_2(x) = sum sin(n x)/n^2 for |x| <= pi.

    Cl_2(x) = x - x log|x| + sum_k |B_2k| x^(2k+1) / (2k (2k+1) (2k)!),
    whose terms shrink like (x / 2 pi)^(2k).
    """
    if x == 0.0:
        return 0.0
    out = x - x * math.log(abs(x))
    x2 = x * x
    power = x
    for c in _clausen_coefficients():
        power *= x2
        term = c * power
        out += term
        if abs(term) < 1e-18 * abs(out):
            break
    return out


def lobachevsky(theta: float) -> float:
    """Lambda(theta) = -int_0^theta log|2 sin x| dx = Cl_2(2 theta) / 2."""
    if not math.isfinite(theta):
        raise ValueError(f"Lobachevsky function needs a finite angle, got {theta}")
    # odd and pi-periodic: reduce to (-pi/2, pi/2]
    r = math.remainder(theta, math.pi)
    return 0.5 * _clausen2(2 * r)


def _li2_series(z: complex) -> complex:
    out = 0j
    power = 1 + 0j
    for n in range(1, 200):
        power *= z
        term = power / (n * n)
        out += term
        if abs(term) < 1e-17 * max(abs(out), 1e-300):
            break
    return out


@lru_cache(maxsize=None)
def _li2_bernoulli() -> tuple[float, ...]:
    """B_n / (n+1)! for n = 0..40 (B_1 = -1/2)."""
    size = 41
    a = [Fraction(0)] * (size + 1)
    bern = []
    for m in range(size + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        bern.append(a[0])
    bern[1] = -bern[1]  # recurrence yields B_1 = +1/2
    return tuple(float(bern[n] / math.factorial(n + 1)) for n in range(size))


def _li2_log_series(z: complex) -> complex:
    """Li_2(z) = sum B_n w^(n+1)/(n+1)!, w = -log(1-z); needs |w| < 2 pi."""
    w = -cmath.log(1 - z)
    out = 0j
    power = w
    for n, c in enumerate(_li2_bernoulli()):
        if n > 1 and n % 2:
            power *= w
            continue
        out += c * power
        power *= w
    return out


def dilog(z: complex) -> complex:
    """Principal-branch dilogarithm Li_2(z), cut along [1, inf)."""
    z = complex(z)
    if z.imag == 0 and z.real > 1:
        raise BranchCutError(f"Li_2 is not defined on its branch cut: z = {z.real}")
    if z == 1:
        return complex(PI2_6)
    if z == 0:
        return 0j
    if abs(z) <= 0.5:
        return _li2_series(z)
    if abs(z) > 1:
        # Li2(z) + Li2(1/z) = -pi^2/6 - log(-z)^2 / 2
        return -dilog(1 / z) - PI2_6 - 0.5 * cmath.log(-z) ** 2
    if z.real > 0.5:
        # Li2(z) + Li2(1-z) = pi^2/6 - log z log(1-z)
        return -_li2_log_series(1 - z) + PI2_6 - cmath.log(z) * cmath.log(1 - z)
    return _li2_log_series(z)


@dataclass(frozen=True)
class ShapeParameter:
    z: complex

    @property
    def positively_oriented(self) -> bool:
        return complex(self.z).imag > 0

    def others(self) -> tuple[complex, complex]:
        """The other two edge parameters 1/(1-z) and 1 - 1/z of the same tetrahedron."""
        z = complex(self.z)
        return 1 / (1 - z), 1 - 1 / z


@dataclass(frozen=True)
class DihedralAngles:
    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        total = self.alpha + self.beta + self.gamma
        if abs(total - math.pi) > ANGLE_SUM_TOL:
            raise ValueError(f"dihedral angles sum to {total!r}, not pi")

    @classmethod
    def from_shape(cls, z: complex) -> DihedralAngles:
        z = complex(z)
        a = cmath.phase(z)
        b = cmath.phase(1 - 1 / z)
        return cls(a, b, math.pi - a - b)


def tetra_volume_angles(a: DihedralAngles) -> float:
    return lobachevsky(a.alpha) + lobachevsky(a.beta) + lobachevsky(a.gamma)


def tetra_volume_shape(z) -> float:
    """Im Li_2(z) + log|z| arg(1 - z), the Bloch-Wigner function.

    For Im z < 0 this is minus the volume of the mirrored tetrahedron; the
    sign is the orientation (see :attr:`ShapeParameter.positively_oriented`).
    """
    z = complex(z.z if isinstance(z, ShapeParameter) else z)
    if z == 0 or z == 1:
        raise EvaluationError(f"degenerate shape parameter z = {z}")
    if z.imag == 0:
        return 0.0
    return dilog(z).imag + math.log(abs(z)) * cmath.phase(1 - z)


def fig8_gluing_residual(z: complex, w: complex) -> complex:
    return z * w * (z - 1) * (w - 1) - 1


COMPLETE_SHAPE = complex(0.5, math.sqrt(3) / 2)


def fig8_complete_volume() -> float:
    """Two regular ideal tetrahedra: 6 Lambda(pi/3)."""
    return 6 * lobachevsky(math.pi / 3)
