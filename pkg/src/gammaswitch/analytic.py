"""Closed-form solutions and design formulas for the two-wave system.

Frequencies and times follow the dynamics convention (units of ``Omega_a``
and ``1/Omega_a``) unless an explicit ``omega_a`` is passed, in which case
they are in whatever units ``omega_a`` carries.
"""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from .dynamics import ModeState

SQRT2 = math.sqrt(2.0)
BESSEL_MAX_ORDER = 5
_SERIES_LIMIT = 12.0


class EigenFrequencies(NamedTuple):
    omega_plus: float
    omega_minus: float


class TransferTime(NamedTuple):
    """A transfer time in its exact and its commonly quoted approximate form."""

    exact: float
    approximate: float


def _split(detuning: float, coupling: float) -> EigenFrequencies:
    # roots of w^2 - detuning*w - 2*coupling^2; the small root comes from the
    # product so it does not suffer cancellation at large detuning
    root = math.hypot(detuning, 2.0 * SQRT2 * coupling)
    if root == 0.0:
        return EigenFrequencies(0.0, 0.0)
    if detuning >= 0:
        wp = 0.5 * (detuning + root)
        return EigenFrequencies(wp, -2.0 * coupling**2 / wp)
    wm = 0.5 * (detuning - root)
    return EigenFrequencies(-2.0 * coupling**2 / wm, wm)


def omega_pm_static(delta: float, omega_a: float = 1.0) -> EigenFrequencies:
    """Normal-mode frequencies ``(Delta +- sqrt(Delta^2 + 8 Omega_a^2)) / 2``."""
    return _split(delta, omega_a)


def omega_pm_rwa(nu_d: float, delta: float, kappa: float, omega_a: float = 1.0) -> EigenFrequencies:
    """RWA frequencies for drive detuning ``nu_d - delta`` and coupling ``J1(kappa) Omega_a``."""
    return _split(nu_d - delta, bessel_j(1, kappa) * omega_a)


def static_solution(t, amplitude: complex = 1.0, delta: float = 0.0, omega_a: float = 1.0) -> ModeState:
    """Static-lattice solution for ``Omega1(0) = A``, ``Omega2(0) = rho(0) = 0``.

    Valid for equal detunings. ``t`` may be an array, in which case the
    fields of the returned state are arrays.
    """
    t = np.asarray(t, dtype=np.float64)
    wp, wm = omega_pm_static(delta, omega_a)
    root = math.hypot(delta, 2.0 * SQRT2 * omega_a)
    carrier = amplitude * np.exp(-1j * delta * t)
    beat = (wp * np.exp(1j * wm * t) - wm * np.exp(1j * wp * t)) / root
    omega1 = 0.5 * carrier * (beat + 1.0)
    omega2 = 0.5 * carrier * (beat - 1.0)
    rho = -carrier / root * (np.exp(1j * wm * t) - np.exp(1j * wp * t))
    return ModeState(omega1, omega2, rho)


def resonant_static_solution(t, amplitude: complex = 1.0, omega_a: float = 1.0) -> ModeState:
    """The ``Delta = 0`` special case in trigonometric form."""
    t = np.asarray(t, dtype=np.float64)
    x = omega_a * t / SQRT2
    return ModeState(
        amplitude * np.cos(x) ** 2,
        -amplitude * np.sin(x) ** 2,
        1j * amplitude / (SQRT2 * omega_a) * np.sin(SQRT2 * omega_a * t),
    )


def transfer_time_static(delta: float, omega_a: float = 1.0) -> TransferTime:
    """``pi / |omega_-|`` and its large-detuning form ``pi |Delta| / 2 Omega_a^2``.

    The approximate form is ``nan`` at ``Delta = 0`` where it does not apply.
    """
    _, wm = omega_pm_static(delta, omega_a)
    approx = math.pi * abs(delta) / (2.0 * omega_a**2) if delta != 0 else math.nan
    return TransferTime(math.pi / abs(wm), approx)


def bessel_j(n: int, x: float) -> float:
    """Bessel function of the first kind ``J_n(x)`` for integer ``0 <= n <= 5``.

    Uses the ascending power series for ``|x| <= 12`` and Miller's downward
    recurrence, normalised by ``J0 + 2 sum J_2k = 1``, beyond that.
    """
    if int(n) != n or not 0 <= n <= BESSEL_MAX_ORDER:
        raise ValueError(f"order must be an integer in [0, {BESSEL_MAX_ORDER}], got {n!r}")
    n = int(n)
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("argument must be finite")
    sign = -1.0 if (x < 0 and n % 2) else 1.0
    ax = abs(x)
    if ax == 0.0:
        return 1.0 if n == 0 else 0.0
    if ax <= _SERIES_LIMIT:
        return sign * _bessel_series(n, ax)
    return sign * _bessel_miller(n, ax)


def _bessel_series(n: int, x: float) -> float:
    half = 0.5 * x
    q = -half * half
    term = half**n / math.factorial(n)
    terms = [term]
    k = 0
    while True:
        k += 1
        term *= q / (k * (k + n))
        terms.append(term)
        if abs(term) < 1e-18 * max(abs(t) for t in terms[-3:]) or abs(term) < 1e-300:
            break
    return math.fsum(terms)


def _bessel_miller(n: int, x: float) -> float:
    start = 2 * ((int(x) + 20 + int(10.0 * x ** (1.0 / 3.0))) // 2) + 2
    j_next, j_cur = 0.0, 1e-30
    norm = 0.0
    wanted = 0.0
    for k in range(start, 0, -1):
        j_prev = 2.0 * k / x * j_cur - j_next
        j_next, j_cur = j_cur, j_prev
        if abs(j_cur) > 1e250:
            j_next *= 1e-250
            j_cur *= 1e-250
            norm *= 1e-250
            wanted *= 1e-250
        # j_cur now holds J_{k-1}
        if k - 1 == n:
            wanted = j_cur
        if (k - 1) % 2 == 0 and k - 1 > 0:
            norm += 2.0 * j_cur
    norm += j_cur
    return wanted / norm


def rwa_vibrating_solution(t, amplitude: complex = 1.0, delta: float = 0.0, nu_d: float = 0.0,
                           kappa: float = 0.0, omega_a: float = 1.0):
    """Rotating-wave solution ``(Omega1, Omega2)`` for a vibrating lattice.

    Assumes equal detunings, equal modulation amplitudes and a drive close
    to ``delta`` compared with ``nu_d``. At ``nu_d = delta`` it reduces to
    ``A e^{-i Delta t} cos^2(J1 Omega_a t / sqrt 2)`` and
    ``-A e^{-i Delta t} sin^2(J1 Omega_a t / sqrt 2)``.
    """
    t = np.asarray(t, dtype=np.float64)
    mismatch = nu_d - delta
    coupling = bessel_j(1, kappa) * omega_a
    root = math.hypot(mismatch, 2.0 * SQRT2 * coupling)
    # (w+ e^{-i w- t} - w- e^{-i w+ t}) / root rewritten so root -> 0 is finite
    half = 0.5 * root * t
    sin_over_root = 0.5 * t * np.sinc(half / math.pi)
    beat = np.exp(-0.5j * mismatch * t) * (np.cos(half) + 1j * mismatch * sin_over_root)
    carrier = amplitude * np.exp(-1j * delta * t)
    return 0.5 * carrier * (beat + 1.0), 0.5 * carrier * (beat - 1.0)


def transfer_time_vibrating(kappa: float, omega_a: float = 1.0) -> TransferTime:
    """Driven transfer time at ``nu_d = delta``.

    ``exact`` is the RWA value ``pi / (sqrt 2 J1(kappa) Omega_a)``;
    ``approximate`` the small-kappa form ``sqrt 2 pi / (kappa Omega_a)``.
    Both are ``inf`` for ``kappa = 0``.
    """
    if kappa < 0:
        raise ValueError("kappa must be non-negative")
    if kappa == 0:
        return TransferTime(math.inf, math.inf)
    j1 = abs(bessel_j(1, kappa))
    exact = math.pi / (SQRT2 * j1 * omega_a) if j1 > 0 else math.inf
    return TransferTime(exact, SQRT2 * math.pi / (kappa * omega_a))


def optimal_kappa() -> tuple[float, float]:
    """Modulation amplitude maximising ``J1`` and the rate factor ``J1 / sqrt 2``."""
    res = minimize_scalar(lambda k: -bessel_j(1, k), bracket=(0.5, 1.8, 3.7),
                          method="golden", options={"xtol": 1e-10})
    kappa = float(res.x)
    return kappa, bessel_j(1, kappa) / SQRT2


def combination_resonance_frequency(delta: float, omega_a: float = 1.0) -> float:
    """Drive frequency ``omega_+ - omega_- = sqrt(Delta^2 + 8 Omega_a^2)``."""
    return math.hypot(delta, 2.0 * SQRT2 * omega_a)
