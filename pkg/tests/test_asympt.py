import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import kashaev_sine_sum
from jonesvol.asympt import (
    MAX_ABS_U,
    DeformationState,
    LimitSeries,
    alexander_limit_check,
    core_length,
    dehn_coefficients,
    dehn_filling,
    dH_du,
    dH_du_numeric,
    fig8_log_kashaev,
    filled_volume,
    fit_limit,
    growth_factor,
    growth_partial,
    growth_peak,
    potential_H,
    saddle_solve,
    shapes_from_u,
    v_of_u,
    vol_cs_combination,
    volume_limit_series,
)
from jonesvol.errors import BranchError, EvaluationError
from jonesvol.hypgeom import fig8_complete_volume

VOL = 2.0298832128193072500
small_u = st.complex_numbers(max_magnitude=0.2, allow_nan=False, allow_infinity=False)


def _gluing_oracle(u: complex) -> float:
    """Solve w(1 - z) = e^u, z w (z-1)(w-1) = 1 from the regular shapes with
    mpmath and return the Bloch-Wigner volume sum."""
    with mpmath.workdps(30):
        x = mpmath.exp(mpmath.mpc(u))
        # eliminate w, then continue z from e^(i pi/3) in small steps
        z = mpmath.exp(1j * mpmath.pi / 3)
        for s in range(1, 21):
            xs = mpmath.exp(mpmath.mpc(u) * s / 20)
            f = lambda z: z * (xs / (1 - z)) * (z - 1) * (xs / (1 - z) - 1) - 1
            z = mpmath.findroot(f, z)
        w = x / (1 - z)

        def bw(t):
            return mpmath.im(mpmath.polylog(2, t)) + mpmath.log(abs(t)) * mpmath.arg(1 - t)

        return float(bw(z) + bw(w))


def test_growth_helpers():
    assert growth_factor(6, 1) == pytest.approx(1.0)
    assert growth_factor(6, 3) == pytest.approx(4.0)
    assert growth_partial(6, 0) == 1.0
    for N in (6, 12, 60):
        assert sum(growth_partial(N, j) for j in range(N)) == pytest.approx(kashaev_sine_sum(N), rel=1e-12)
    # factors exceed 1 exactly for N/6 < k < 5N/6, so partial products peak at 5N/6
    assert [growth_peak(N) for N in (6, 12, 60)] == [5, 10, 50]
    with pytest.raises(ValueError):
        growth_partial(6, 6)


def test_log_kashaev():
    for N in (2, 3, 10, 50):
        assert abs(fig8_log_kashaev(N) - math.log(kashaev_sine_sum(N))) < 1e-11


def test_series_gaps_and_validation():
    logs = {4: 1.0, 5: -math.inf, 6: 2.0}
    s = volume_limit_series(logs.__getitem__, [4, 5, 6])
    assert s.N == (4, 6) and s.gaps == (5,)
    assert s.values[0] == pytest.approx(2 * math.pi / 4)
    with pytest.raises(ValueError):
        LimitSeries((3, 2), (1.0, 1.0))
    threaded = volume_limit_series(fig8_log_kashaev, range(10, 60, 7), workers=4)
    serial = volume_limit_series(fig8_log_kashaev, range(10, 60, 7))
    assert threaded == serial


def test_fit_recovers_synthetic_model():
    N = np.arange(100, 2001, 50)
    y = 1.5 + 0.75 * np.log(N) / N - 3.0 / N
    fit = fit_limit(LimitSeries(tuple(int(n) for n in N), tuple(float(v) for v in y)), (100, 2000))
    assert fit.a == pytest.approx(1.5, abs=1e-10)
    assert fit.b == pytest.approx(0.75, abs=1e-7)
    assert fit.c == pytest.approx(-3.0, abs=1e-6)
    assert fit.rms < 1e-12
    assert np.allclose(fit.model(N), y)
    with pytest.raises(ValueError):
        fit_limit(LimitSeries((1, 2), (0.0, 0.0)))


def test_volume_limit_fit():
    s = volume_limit_series(fig8_log_kashaev, range(1000, 10001, 100))
    fit = fit_limit(s, (1000, 10000))
    assert abs(fit.a - fig8_complete_volume()) < 1e-3
    # leading correction is (3/2) * 2 pi log N / N
    assert fit.b == pytest.approx(3 * math.pi, rel=1e-2)


def test_complete_structure_at_zero():
    st0 = DeformationState.at(0)
    assert abs(st0.z - cmath.exp(1j * math.pi / 3)) < 1e-12
    assert abs(st0.w - cmath.exp(1j * math.pi / 3)) < 1e-12
    assert abs(st0.y - cmath.exp(-1j * math.pi / 3)) < 1e-12
    assert abs(potential_H(0) - 1j * VOL) < 1e-12
    assert abs(v_of_u(0)) < 1e-12
    assert filled_volume(0) == pytest.approx(VOL, abs=1e-12)
    assert dehn_filling(0, 0).is_cusp


@given(small_u)
@settings(max_examples=40, deadline=None)
def test_state_residuals(u):
    st_ = DeformationState.at(u)
    for name, r in st_.residuals().items():
        assert r < 1e-12, name
    assert abs(st_.volume - st_.tetra_volume_sum()) < 1e-10
    assert abs(saddle_solve(u) - st_.y) == 0
    assert shapes_from_u(u) == (st_.z, st_.w)


@given(small_u)
@settings(max_examples=20, deadline=None)
def test_derivative_and_symmetries(u):
    assert abs(dH_du(u) - dH_du_numeric(u)) < 1e-8
    v = v_of_u(u)
    assert abs(v_of_u(-u) + v) < 1e-12
    assert abs(v_of_u(u.conjugate()) + v.conjugate()) < 1e-12
    assert filled_volume(u) <= VOL + 1e-12


@pytest.mark.parametrize("u", [0.05, 0.1j, 0.12 + 0.07j, -0.15 + 0.02j, 0.3 - 0.2j])
def test_filled_volume_matches_gluing_oracle(u):
    assert abs(filled_volume(u) - _gluing_oracle(u)) < 1e-10


def test_dehn_filling_solution():
    u = 0.1 + 0.05j
    v = v_of_u(u)
    p, q = dehn_coefficients(u, v)
    assert abs(p * u + q * v - 2j * math.pi) < 1e-12
    d = dehn_filling(u, v)
    assert d.core_length == pytest.approx(core_length(u, v))
    assert d.core_length > 0
    assert abs(d.kappa - u / q) < 1e-15
    combo = vol_cs_combination(u)
    assert combo.real == pytest.approx(filled_volume(u), abs=1e-12)


def test_dehn_degenerate_and_wrong_branch():
    with pytest.raises(EvaluationError):
        dehn_coefficients(0.1, 0.2)
    with pytest.raises(BranchError):
        core_length(0.1 + 0.1j, -0.3 - 5j)


@pytest.mark.parametrize("u", [10, 0.6j, complex(math.nan, 0)])
def test_outside_box(u):
    assert MAX_ABS_U == 0.5
    with pytest.raises(BranchError):
        DeformationState.at(u)


def test_alexander_limit():
    target = 1 / (3 - 2 * math.cosh(0.1))
    v200, t = alexander_limit_check(0.1, 200)
    v2000, _ = alexander_limit_check(0.1, 2000)
    assert abs(t - target) < 1e-15
    assert abs(v2000 - target) < 1e-2
    assert abs(v2000 - target) < abs(v200 - target)
    with pytest.raises(EvaluationError):
        alexander_limit_check(math.acosh(1.5), 10)


def test_small_examples():
    assert growth_factor(2, 1) == pytest.approx(4.0)
    s = LimitSeries((10, 20, 30, 40), (1.25,) * 4)
    fit = fit_limit(s, (10, 40))
    assert fit.a == pytest.approx(1.25, abs=1e-12)
    assert abs(fit.b) < 1e-9 and abs(fit.c) < 1e-9
    s2 = volume_limit_series(fig8_log_kashaev, [2])
    assert s2.values[0] == pytest.approx(math.pi * math.log(5))
    p, q = dehn_coefficients(2j * math.pi, 1)
    assert (p, q) == pytest.approx((1.0, 0.0))
    with pytest.raises(EvaluationError):
        dehn_coefficients(0, 0)
    assert core_length(0, 0) == 0
    assert core_length(0.3, 2j) == pytest.approx(0.3 * 2 / (2 * math.pi))


def test_saddle_residual_wider_grid():
    rng = np.random.default_rng(9)
    for _ in range(100):
        u = 0.3 * math.sqrt(rng.uniform()) * cmath.exp(1j * rng.uniform(0, 2 * math.pi))
        st_ = DeformationState.at(u)
        assert st_.residuals()["saddle"] <= 1e-12
        assert st_.residuals()["gluing"] <= 1e-10


def test_potential_at_zero_and_slope():
    assert abs(potential_H(0).real) < 1e-12
    assert abs(dH_du_numeric(0) - 1j * math.pi) < 1e-6


def test_vol_cs_at_zero_mod_pi_squared():
    from jonesvol.asympt import reduce_mod

    combo = vol_cs_combination(0)
    assert combo.real == pytest.approx(VOL, abs=1e-12)
    assert reduce_mod(combo.imag, math.pi ** 2) < 1e-10


@pytest.mark.parametrize("u", [0.05, 0.12, -0.18])
def test_vol_cs_real_part_on_real_axis(u):
    assert abs(vol_cs_combination(u).real - filled_volume(u)) < 1e-8


def test_alexander_at_zero():
    for N in (1, 5, 40):
        v, t = alexander_limit_check(0, N)
        assert v == pytest.approx(1) and t == pytest.approx(1)
