"""Volume Conjecture numerics and the one-parameter deformation of the
figure-eight knot complement.

Limit series
    2 pi log|J_N(K; exp(2 pi i/N))| / N, and a least-squares extrapolation
    a + b log(N)/N + c/N.

Deformation
    For u near 0 put theta = u + 2 pi i.  The saddle point y solves
    y + 1/y = e^theta + e^-theta - 1; the shapes of the two tetrahedra follow
    from x = e^u = w(1 - z), y = -z w, i.e. w = x - y and z = y / (y - x).
    Every logarithm (log y, log z(z-1)) is continued from u = 0 along the
    segment [0, u], so the values are single-valued functions of u.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import BranchError, EvaluationError
from .hypgeom import dilog, fig8_gluing_residual, tetra_volume_shape
from .invariants import fig8_product
from .tensorq import QExponent

TWO_PI_I = 2j * math.pi
MAX_ABS_U = 0.5
TRACK_STEP = 0.01
Y_AT_CUSP = cmath.exp(-1j * math.pi / 3)
# log y at u = 0; the extra 2 pi i makes dH/du(0) = log(-1) = +pi i, so v(0) = 0
LOG_Y_AT_CUSP = 5j * math.pi / 3
LOG_ZZ_AT_CUSP = 1j * math.pi


# -- growth of the Kashaev summands -------------------------------------------

def growth_factor(N: int, k: int) -> float:
    """f(N; k) = 4 sin^2(k pi / N)."""
    if not 0 <= k <= N:
        raise ValueError(f"k = {k} outside [0, {N}]")
    return 4 * math.sin(k * math.pi / N) ** 2


def growth_partial(N: int, j: int) -> float:
    """g(N; j) = prod_{k=1}^{j} f(N; k); the j-th summand of the Kashaev invariant."""
    if not 0 <= j <= N - 1:
        raise ValueError(f"j = {j} outside [0, {N - 1}]")
    out = 1.0
    for k in range(1, j + 1):
        out *= growth_factor(N, k)
    return out


def growth_peak(N: int, rtol: float = 1e-12) -> int:
    """Index of the largest summand g(N; j); ties go to the larger j."""
    k = np.arange(1, N)
    logs = np.concatenate([[0.0], np.cumsum(np.log(4 * np.sin(k * np.pi / N) ** 2))])
    near = np.nonzero(logs >= logs.max() - rtol)[0]
    return int(near[-1])


# -- limit series and fit ----------------------------------------------------

@dataclass(frozen=True)
class LimitSeries:
    N: tuple[int, ...]
    values: tuple[float, ...]
    gaps: tuple[int, ...] = ()

    def __post_init__(self):
        if len(self.N) != len(self.values):
            raise ValueError("N and values differ in length")
        if any(b <= a for a, b in zip(self.N, self.N[1:])):
            raise ValueError("N must be strictly increasing")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("limit series values must be finite")

    def __len__(self):
        return len(self.N)


@dataclass(frozen=True)
class FitResult:
    a: float
    b: float
    c: float
    rms: float
    window: tuple[int, int]

    def model(self, N):
        N = np.asarray(N, dtype=float)
        return self.a + self.b * np.log(N) / N + self.c / N


def fig8_log_kashaev(N: int) -> float:
    """log of the figure-eight Kashaev invariant, O(N) and overflow-free."""
    return fig8_product(N, QExponent.root_of_unity(N), log=True).real


def volume_limit_series(log_abs_evaluator: Callable[[int], float],
                        N_list: Iterable[int], workers: int | None = None) -> LimitSeries:
    """Collect (N, 2 pi log|J_N| / N).

    ``log_abs_evaluator(N)`` returns log|J_N(K; exp(2 pi i/N))|; -inf marks a
    vanishing invariant, recorded as a gap instead of a row.
    """
    N_list = list(N_list)
    if workers and workers > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=workers) as pool:
            logs = list(pool.map(log_abs_evaluator, N_list))
    else:
        logs = [log_abs_evaluator(N) for N in N_list]
    Ns, vals, gaps = [], [], []
    for N, lg in zip(N_list, logs):
        if lg == -math.inf:
            gaps.append(N)
            continue
        Ns.append(N)
        vals.append(2 * math.pi * lg / N)
    return LimitSeries(tuple(Ns), tuple(vals), tuple(gaps))


def fit_limit(series: LimitSeries, window: tuple[int, int] | None = None) -> FitResult:
    """Least squares for a + b log(N)/N + c/N over N in ``window``.

    The default window is the top decade of the series, [N_max / 10, N_max].
    """
    N = np.asarray(series.N, dtype=float)
    y = np.asarray(series.values, dtype=float)
    if window is None:
        window = (max(int(N.min()), int(N.max()) // 10), int(N.max()))
    lo, hi = window
    mask = (N >= lo) & (N <= hi)
    if mask.sum() < 3:
        raise ValueError(f"need >= 3 points in window {window}, have {int(mask.sum())}")
    Nw, yw = N[mask], y[mask]
    A = np.column_stack([np.ones_like(Nw), np.log(Nw) / Nw, 1 / Nw])
    # column scaling keeps the normal equations well conditioned
    scale = np.abs(A).max(axis=0)
    coef, _, rank, _ = np.linalg.lstsq(A / scale, yw, rcond=None)
    if rank < 3:
        raise ValueError(f"rank-deficient fit window {window}")
    coef = coef / scale
    resid = yw - A @ coef
    return FitResult(float(coef[0]), float(coef[1]), float(coef[2]),
                     float(np.sqrt(np.mean(resid ** 2))), (int(Nw.min()), int(Nw.max())))


# -- deformation ---------------------------------------------------------------

def _saddle_roots(u: complex) -> tuple[complex, complex]:
    c = 2 * cmath.cosh(u) - 1  # e^theta + e^-theta - 1 with theta = u + 2 pi i
    disc = cmath.sqrt(c * c - 4)
    if abs(disc) < 1e-12:
        raise EvaluationError(f"degenerate saddle at u = {u}: double root")
    return (c + disc) / 2, (c - disc) / 2


def _check_box(u: complex) -> None:
    if not (math.isfinite(u.real) and math.isfinite(u.imag)):
        raise BranchError(f"u = {u} is not finite")
    if abs(u) > MAX_ABS_U:
        raise BranchError(f"|u| = {abs(u):.3g} outside the supported disk |u| <= {MAX_ABS_U}")


def _track(u: complex) -> tuple[complex, complex, complex, complex, complex]:
    """Continue (y, log y, z, w, log z(z-1)) from u = 0 to u along a straight line."""
    u = complex(u)
    _check_box(u)
    steps = max(1, math.ceil(abs(u) / TRACK_STEP))
    y, log_y = Y_AT_CUSP, LOG_Y_AT_CUSP
    zz, log_zz = -1 + 0j, LOG_ZZ_AT_CUSP
    for s in range(1, steps + 1):
        us = u * s / steps
        r1, r2 = _saddle_roots(us)
        y_new, other = (r1, r2) if abs(r1 - y) <= abs(r2 - y) else (r2, r1)
        if abs(y_new - y) >= 0.5 * abs(other - y):
            raise BranchError(f"saddle roots too close to separate near u = {us}")
        log_y += cmath.log(y_new / y)
        y = y_new
        x = cmath.exp(us)
        w = x - y
        z = y / (y - x)
        zz_new = z * (z - 1)
        step = cmath.log(zz_new / zz)
        if abs(step.imag) > 0.5:
            raise BranchError(f"log z(z-1) jumped by {step.imag:.3g} rad near u = {us}")
        log_zz += step
        zz = zz_new
    x = cmath.exp(u)
    w, z = x - y, y / (y - x)
    for name, val in (("z", z), ("w", w)):
        if abs(val) < 1e-12 or abs(val - 1) < 1e-12:
            raise EvaluationError(f"degenerate shape {name} = {val} at u = {u}")
    return y, log_y, z, w, log_zz


def saddle_solve(u: complex) -> complex:
    """Root of y^2 - (e^theta + e^-theta - 1) y + 1 continued from y(0) = e^(-i pi/3)."""
    return _track(u)[0]


def shapes_from_u(u: complex) -> tuple[complex, complex]:
    """(z, w) solving w(1 - z) = e^u, -z w = y, continuous from z = w = e^(i pi/3)."""
    _, _, z, w, _ = _track(u)
    return z, w


def _potential(u: complex, log_y: complex) -> complex:
    # arguments 1/(y x) and y/x; e^theta = e^u so they are the same in either form
    return (dilog(cmath.exp(-(log_y + u))) - dilog(cmath.exp(log_y - u))
            + log_y * u)


def potential_H(u: complex) -> complex:
    """H(u) = Li2(1/(y x)) - Li2(y/x) + log(y) log(x) with log x = u.

    log y is the continuation from 5 pi i / 3.  H(0) = i Vol(S^3 - E).
    """
    u = complex(u)
    _, log_y, _, _, _ = _track(u)
    return _potential(u, log_y)


def dH_du(u: complex) -> complex:
    """Closed form dH/du = log z(z-1), on the branch through +pi i at u = 0."""
    return _track(complex(u))[4]


def dH_du_numeric(u: complex, step: float = 1e-4) -> complex:
    """Central-difference derivative of :func:`potential_H` (fourth order)."""
    u = complex(u)
    f = potential_H
    return (8 * (f(u + step) - f(u - step)) - (f(u + 2 * step) - f(u - 2 * step))) / (12 * step)


def v_of_u(u: complex) -> complex:
    """v = 2 dH/du - 2 pi i, the log-holonomy of the longitude."""
    return 2 * dH_du(u) - TWO_PI_I


def filled_volume(u: complex) -> float:
    """Im H(u) - pi Re u - Re(u) Im(v) / 2."""
    u = complex(u)
    return potential_H(u).imag - math.pi * u.real - 0.5 * u.real * v_of_u(u).imag


@dataclass(frozen=True)
class DehnFilling:
    p: float | None
    q: float | None
    kappa: complex
    core_length: float

    @property
    def is_cusp(self) -> bool:
        return self.p is None


def dehn_coefficients(u: complex, v: complex, tol: float = 1e-14) -> tuple[float, float]:
    """Real (p, q) with p u + q v = 2 pi i."""
    u, v = complex(u), complex(v)
    A = np.array([[u.real, v.real], [u.imag, v.imag]])
    det = np.linalg.det(A)
    if abs(det) <= tol * max(1.0, abs(u) * abs(v)):
        raise EvaluationError(f"u = {u} and v = {v} are real-linearly dependent")
    p, q = np.linalg.solve(A, [0.0, 2 * math.pi])
    return float(p), float(q)


def core_length(u: complex, v: complex, tol: float = 1e-10) -> float:
    """-Im(u conj(v)) / (2 pi); negative beyond ``tol`` means a wrong branch upstream."""
    length = -(complex(u) * complex(v).conjugate()).imag / (2 * math.pi)
    if length < -tol:
        raise BranchError(f"negative core length {length:.3g}: inconsistent (u, v) branch")
    return max(length, 0.0) if length < 0 else length


def dehn_filling(u: complex, v: complex) -> DehnFilling:
    """(p, q), complex length kappa = u / q (torsion mod 2 pi / q) and core length."""
    length = core_length(u, v)
    try:
        p, q = dehn_coefficients(u, v)
    except EvaluationError:
        return DehnFilling(None, None, complex(length, 0.0), length)
    if abs(q) < 1e-300:
        return DehnFilling(p, q, complex(length, 0.0), length)
    kappa = complex(u) / q
    return DehnFilling(p, q, kappa, length)


def vol_cs_combination(u: complex) -> complex:
    """-i H(u) - pi u + u v i / 4 - pi kappa / 2; real part is the filled volume."""
    u = complex(u)
    H = potential_H(u)
    v = v_of_u(u)
    kappa = dehn_filling(u, v).kappa
    return -1j * H - math.pi * u + u * v * 1j / 4 - math.pi * kappa / 2


def reduce_mod(x: float, period: float) -> float:
    """Distance from x to the nearest multiple of ``period``."""
    return abs(math.remainder(x, period))


@dataclass(frozen=True)
class DeformationState:
    u: complex
    theta: complex
    y: complex
    log_y: complex
    z: complex
    w: complex
    x: complex
    v: complex
    H: complex

    @classmethod
    def at(cls, u: complex) -> DeformationState:
        u = complex(u)
        y, log_y, z, w, log_zz = _track(u)
        return cls(u=u, theta=u + TWO_PI_I, y=y, log_y=log_y, z=z, w=w,
                   x=cmath.exp(u), v=2 * log_zz - TWO_PI_I, H=_potential(u, log_y))

    def residuals(self) -> dict[str, float]:
        th = self.theta
        return {
            "saddle": abs(self.y + 1 / self.y - cmath.exp(th) - cmath.exp(-th) + 1),
            "gluing": abs(fig8_gluing_residual(self.z, self.w)),
            "meridian": abs(self.w * (1 - self.z) - self.x),
            "longitude_y": abs(-self.z * self.w - self.y),
        }

    @property
    def volume(self) -> float:
        return self.H.imag - math.pi * self.u.real - 0.5 * self.u.real * self.v.imag

    def tetra_volume_sum(self) -> float:
        return tetra_volume_shape(self.z) + tetra_volume_shape(self.w)


# -- Alexander-polynomial limit (Garoufalidis-Le), figure-eight only ----------

def alexander_fig8(t: complex) -> complex:
    return -t + 3 - 1 / t


def alexander_limit_check(theta: complex, N: int) -> tuple[complex, complex]:
    """(J_N(E; exp(theta/N)), 1 / Delta(E; e^theta))."""
    theta = complex(theta)
    denom = 3 - cmath.exp(theta) - cmath.exp(-theta)
    if abs(denom) < 1e-12:
        raise EvaluationError(f"1/Delta has a pole at theta = {theta}")
    value = fig8_product(N, QExponent(theta / N))
    return value, 1 / denom
