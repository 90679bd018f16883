"""Right-hand sides, geometry helpers and the quadratic invariants."""
import cmath
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gammaswitch.analytic import resonant_static_solution
from gammaswitch.dynamics import (DriveParams, FirstOrderSystem, FrequencyShift, Geometry, ModeState,
                                  SecondOrderState, SecondOrderSystem, conserved_energy,
                                  detuning_from_wavevector, integral_of_motion_residual,
                                  modulation_amplitudes, rhs_first_order, rhs_second_order)
from gammaswitch.integrator import IntegrationControls, integrate
from gammaswitch.materials import C_LIGHT

real = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
cplx = st.complex_numbers(max_magnitude=3.0, allow_nan=False, allow_infinity=False)
shift = st.builds(FrequencyShift, real, real, real, real)


def hand_first_order(s, t, d1, d2, k1, k2, nu, dw=0.0):
    w1, w2, rho = s
    e1 = cmath.exp(-1j * k1 * math.sin(nu * t))
    e2 = cmath.exp(-1j * k2 * math.sin(nu * t))
    return (-1j * d1 * w1 + 1j * e1 * rho,
            -1j * d2 * w2 + 1j * e2 * rho,
            1j * dw * rho + 1j * w1 / e1 + 1j * w2 / e2)


# --- geometry -------------------------------------------------------------

def test_zero_vibration_gives_zero_kappas():
    g = Geometry((1e11, 0, 0), (0, 2e10, 0), (0, 0, 1), 0.0)
    assert modulation_amplitudes(g) == (0.0, 0.0)
    assert DriveParams.from_geometry(g, nu_d=5.0).is_static


def test_perpendicular_vibration_equal_kappas():
    d = 1e-12
    g = Geometry((1.841 / d, 0, 0), (0, 3e10, 0), (1, 0, 0), d)
    assert g.is_perpendicular
    k1, k2 = modulation_amplitudes(g)
    assert k1 == pytest.approx(1.841, rel=1e-14)
    assert k2 == k1


def test_geometry_dot_products():
    r = 1 / math.sqrt(2)
    g = Geometry((10, 0, 0), (-10, 10, 0), (r, r, 0), 0.1)
    assert g.k2 == (0.0, 10.0, 0.0)
    k1, k2 = modulation_amplitudes(g)
    assert k1 == pytest.approx(0.1 * 10 * r, rel=1e-15)
    assert k2 == pytest.approx(0.1 * 10 * r, rel=1e-15)
    assert g.is_perpendicular


def test_geometry_rejects_non_unit_direction():
    with pytest.raises(ValueError):
        Geometry((1, 0, 0), (0, 1, 0), (1, 1e-5, 0), 0.1)


def test_static_reduction_is_exact():
    g = Geometry((1e11, 0, 0), (0, 2e10, 0), (0, 0, 1), 0.0)
    driven = FirstOrderSystem(3.0, 3.0, DriveParams.from_geometry(g, nu_d=7.0))
    static = FirstOrderSystem(3.0, 3.0)
    y = np.array([1 + 2j, -0.5j, 0.3 - 0.1j])
    for t in (0.0, 0.37, 11.0):
        assert np.array_equal(driven(t, y), static(t, y))


# --- detuning ---------------------------------------------------------------

def test_detuning_on_resonance():
    w = 4.5e19
    assert detuning_from_wavevector(w / C_LIGHT, w) == pytest.approx(0.0, abs=1e-3 * w * 1e-15)


def test_detuning_series():
    w, eps = 4.5e19, 1e-6
    d = detuning_from_wavevector(w * (1 + eps) / C_LIGHT, w)
    assert abs(d - eps * w) / (eps * w) <= eps


def test_detuning_against_extended_precision():
    w = 1e19
    k = 1.001 * w / C_LIGHT
    with mpmath.workdps(40):
        ck = mpmath.mpf(C_LIGHT) * mpmath.mpf(k)
        exact = float((ck**2 - mpmath.mpf(w) ** 2) / (2 * mpmath.mpf(w)))
    assert detuning_from_wavevector(k, w) == pytest.approx(exact, rel=1e-13)
    assert detuning_from_wavevector(k, w, omega_a=2e11) == pytest.approx(exact / 2e11, rel=1e-13)


# --- first-order system -----------------------------------------------------

@pytest.mark.parametrize("drive", [DriveParams(), DriveParams(3.0, 0.4, 0.9)])
def test_initial_slopes(drive):
    a = 0.7 - 0.2j
    ds = rhs_first_order(ModeState(a, 0, 0), 0.0, 250.0, 250.0, drive)
    assert ds.omega1 == pytest.approx(-1j * 250.0 * a)
    assert ds.omega2 == 0
    assert ds.rho == pytest.approx(1j * a)


def test_symmetric_emission():
    rho0 = 0.3 + 0.4j
    ds = rhs_first_order(ModeState(0, 0, rho0), 1.3, 0.0, 0.0)
    assert ds.omega1 == pytest.approx(1j * rho0)
    assert ds.omega2 == pytest.approx(1j * rho0)


def test_first_order_hand_evaluation():
    nu = 2.0
    t = math.pi / 2 / nu
    got = rhs_first_order(ModeState(1, 1, 1), t, 2.0, 2.0, DriveParams(nu, 0.5, 0.5))
    e = cmath.exp(-0.5j)
    assert got.omega1 == pytest.approx(-2j + 1j * e, abs=1e-15)
    assert got.omega2 == pytest.approx(-2j + 1j * e, abs=1e-15)
    assert got.rho == pytest.approx(2j * e.conjugate(), abs=1e-15)


@settings(max_examples=80)
@given(s=st.tuples(cplx, cplx, cplx), t=real, d1=real, d2=real, k1=real, k2=real, nu=real, fs=shift)
def test_first_order_matches_scalar_oracle(s, t, d1, d2, k1, k2, nu, fs):
    got = FirstOrderSystem(d1, d2, DriveParams(nu, k1, k2, fs))(t, np.array(s))
    want = hand_first_order(s, t, d1, d2, k1, k2, nu, float(fs(t)))
    assert np.allclose(got, want, rtol=1e-12, atol=1e-12)


@settings(max_examples=80)
@given(s=st.tuples(cplx, cplx, cplx), t=real, d1=real, d2=real, k1=real, k2=real, nu=real, fs=shift)
def test_energy_is_stationary_pointwise(s, t, d1, d2, k1, k2, nu, fs):
    # the generator is i times a Hermitian matrix, so d|y|^2/dt = 2 Re(y* . f) = 0
    y = np.array(s)
    f = FirstOrderSystem(d1, d2, DriveParams(nu, k1, k2, fs))(t, y)
    scale = 1.0 + float(np.sum(np.abs(y) ** 2)) * (1 + abs(d1) + abs(d2) + abs(k1) + abs(k2) + fs.max_rate)
    assert abs(np.vdot(y, f).real) <= 1e-13 * scale


# --- second-order system ----------------------------------------------------

def test_second_order_static_resonant():
    a = 1.5 + 0j
    ds = rhs_second_order(SecondOrderState(a, 0, 0, 0), 0.4, 0.0, 0.0)
    assert ds.domega1 == pytest.approx(-a)
    assert ds.domega2 == pytest.approx(-a)
    assert ds.omega1 == 0 and ds.omega2 == 0


def test_perpendicular_coupling_phase_is_unity():
    s = SecondOrderState(0.3, 0.8 - 0.1j, 0, 0)
    static = rhs_second_order(s, 0.0, 0.0, 0.0)
    for t in np.linspace(0.1, 3.0, 7):
        # with zero slopes and zero detuning only the coupling term survives
        got = rhs_second_order(s, t, 0.0, 0.0, DriveParams(2.3, 0.6, 0.6))
        assert got.domega1 == pytest.approx(static.domega1, abs=1e-15)
        assert got.domega2 == pytest.approx(static.domega2, abs=1e-15)


def test_second_order_hand_evaluation():
    w1, w2, v1, v2 = 0.5 + 0.1j, -0.2 + 0.7j, 1.1 - 0.3j, 0.4j
    d1, d2, k1, k2, nu, t = 1.5, -0.5, 0.8, 0.3, 2.0, 0.9
    f1, f2 = k1 * nu * math.cos(nu * t), k2 * nu * math.cos(nu * t)
    c = cmath.exp(-1j * (k1 - k2) * math.sin(nu * t))
    a1 = -1j * (d1 + f1) * v1 + f1 * d1 * w1 - (w1 + w2 * c)
    a2 = -1j * (d2 + f2) * v2 + f2 * d2 * w2 - (w2 + w1 / c)
    got = rhs_second_order(SecondOrderState(w1, w2, v1, v2), t, d1, d2, DriveParams(nu, k1, k2))
    assert got.domega1 == pytest.approx(a1, abs=1e-14)
    assert got.domega2 == pytest.approx(a2, abs=1e-14)


@settings(max_examples=80)
@given(s=st.tuples(cplx, cplx, cplx), t=real, d1=real, d2=real, k1=real, k2=real, nu=real, fs=shift)
def test_second_order_is_time_derivative_of_first_order(s, t, d1, d2, k1, k2, nu, fs):
    # chain rule on dOmega_j/dt = -i D_j Omega_j + i e_j(t) rho
    drive = DriveParams(nu, k1, k2, fs)
    y = np.array(s)
    dy = FirstOrderSystem(d1, d2, drive)(t, y)
    w1, w2, rho = s
    want = []
    for k, d, w, dw_ in ((k1, d1, w1, dy[0]), (k2, d2, w2, dy[1])):
        e = cmath.exp(-1j * k * math.sin(nu * t))
        de = -1j * k * nu * math.cos(nu * t) * e
        want.append(-1j * d * dw_ + 1j * de * rho + 1j * e * dy[2])
    got = SecondOrderSystem(d1, d2, drive)(t, np.array([w1, w2, dy[0], dy[1]]))
    assert np.allclose(got[:2], dy[:2], rtol=0, atol=1e-12)
    assert np.allclose(got[2:], want, rtol=1e-11, atol=1e-10)


def test_second_order_initial_state_and_coherence():
    sysm = SecondOrderSystem(250.0, 250.0, DriveParams.perpendicular(250.0, 0.21))
    s0 = sysm.initial_state(2.0)
    assert s0.domega1 == pytest.approx(-500j) and s0.domega2 == 0
    assert sysm.coherence(0.0, s0.omega1, s0.domega1) == pytest.approx(0.0, abs=1e-12)
    rho = 0.3 - 0.2j
    y = np.array([0.4 + 0.1j, -0.3j, rho])
    first = FirstOrderSystem(250.0, 250.0, sysm.drive)
    t = 0.123
    dw1 = first(t, y)[0]
    assert sysm.coherence(t, y[0], dw1) == pytest.approx(rho, abs=1e-12)


# --- invariants -------------------------------------------------------------

def test_energy_examples():
    a = 1.7
    assert conserved_energy(ModeState(a, 0, 0)) == pytest.approx(a * a)
    assert conserved_energy(ModeState(0, 0, a)) == pytest.approx(a * a)
    t = np.linspace(0, 20, 101)
    s = resonant_static_solution(t, a)
    assert np.allclose(conserved_energy(s), a * a, rtol=1e-14)


def test_integral_residual_examples():
    a = 0.6 + 0.8j
    assert integral_of_motion_residual(ModeState(a, 0, 0), 0.0, a, 5.0) == 0
    assert integral_of_motion_residual(ModeState(a, a, 0), 0.0, a, 5.0) == pytest.approx(abs(a))


@settings(max_examples=10, deadline=None)
@given(c=st.complex_numbers(min_magnitude=0.1, max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_linearity_in_initial_state(c):
    sysm = FirstOrderSystem(10.0, 10.0, DriveParams.perpendicular(9.5, 0.6, FrequencyShift(0.2, 0.5, 3.0)))
    ctl = IntegrationControls(5.0, 1e-3, 50)
    base = integrate(sysm, sysm.initial_state(1.0), ctl)
    scaled = integrate(sysm, sysm.initial_state(c), ctl)
    assert np.allclose(scaled.states, c * base.states, rtol=1e-12, atol=1e-13 * abs(c))


def test_drive_rejects_non_finite():
    with pytest.raises(ValueError):
        DriveParams(nu_d=math.inf)
