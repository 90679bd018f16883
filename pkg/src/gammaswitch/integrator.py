"""Fixed-step classical Runge-Kutta integration of small complex ODE systems."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

from .dynamics import ModeState, SecondOrderState, conserved_energy


class IntegrationError(RuntimeError):
    """The state became non-finite during integration."""

    def __init__(self, time: float):
        super().__init__(f"non-finite state encountered at t = {time:.17g}")
        self.time = time


@dataclass(frozen=True)
class IntegrationControls:
    """Integration window and sampling.

    The step count is ``ceil(t_end / dt)`` and the step is shrunk to
    ``t_end / n`` so the last sample lands exactly on ``t_end``.
    """

    t_end: float
    dt: float
    sample_stride: int = 1

    def __post_init__(self):
        if not (self.dt > 0 and math.isfinite(self.t_end) and self.dt <= self.t_end):
            raise ValueError(f"need 0 < dt <= t_end, got dt={self.dt!r}, t_end={self.t_end!r}")
        if int(self.sample_stride) != self.sample_stride or self.sample_stride < 1:
            raise ValueError("sample_stride must be a positive integer")

    @property
    def n_steps(self) -> int:
        # tolerate t_end/dt landing a hair above an integer
        return max(1, math.ceil(self.t_end / self.dt - 1e-9))

    @property
    def step(self) -> float:
        return self.t_end / self.n_steps


def step_size_for(delta: float, nu_d: float = 0.0, kappa: float = 0.0,
                  steps_per_period: int = 50) -> float:
    """Step resolving the fastest oscillation with ``steps_per_period`` steps.

    The fastest angular frequency is taken as the largest of ``|delta| +
    |kappa nu_d|`` (detuning plus the peak Doppler shift), ``|nu_d|`` and
    the resonant splitting ``sqrt(2)``.
    """
    rate = max(abs(delta) + abs(kappa * nu_d), abs(nu_d), math.sqrt(2.0), 1.0)
    period = min(2.0 * math.pi / rate, 2.0 * math.pi)
    return period / steps_per_period


@njit(cache=True, nogil=True)
def _rk4_loop(f, y0, p, h, n, stride):
    m = y0.size
    n_out = n // stride + 1
    if n % stride:
        n_out += 1
    ys = np.empty((n_out, m), dtype=np.complex128)
    ts = np.empty(n_out)
    y = y0.copy()
    k1 = np.empty(m, dtype=np.complex128)
    k2 = np.empty(m, dtype=np.complex128)
    k3 = np.empty(m, dtype=np.complex128)
    k4 = np.empty(m, dtype=np.complex128)
    tmp = np.empty(m, dtype=np.complex128)
    ys[0] = y
    ts[0] = 0.0
    j = 1
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(n):
        t = i * h
        f(t, y, p, k1)
        for q in range(m):
            tmp[q] = y[q] + half * k1[q]
        f(t + half, tmp, p, k2)
        for q in range(m):
            tmp[q] = y[q] + half * k2[q]
        f(t + half, tmp, p, k3)
        for q in range(m):
            tmp[q] = y[q] + h * k3[q]
        f(t + h, tmp, p, k4)
        finite = True
        for q in range(m):
            y[q] = y[q] + sixth * (k1[q] + 2.0 * k2[q] + 2.0 * k3[q] + k4[q])
            if not (math.isfinite(y[q].real) and math.isfinite(y[q].imag)):
                finite = False
        if not finite:
            return ts[:j], ys[:j], i + 1
        if (i + 1) % stride == 0 or i + 1 == n:
            ys[j] = y
            ts[j] = (i + 1) * h
            j += 1
    return ts[:j], ys[:j], -1


def _rk4_python(f, y0, h, n, stride):
    # overflow surfaces as IntegrationError, not as a floating-point warning
    with np.errstate(over="ignore", invalid="ignore"):
        return _rk4_python_steps(f, np.array(y0, dtype=np.complex128), h, n, stride)


def _rk4_python_steps(f, y, h, n, stride):
    ts, ys = [0.0], [y.copy()]
    for i in range(n):
        t = i * h
        k1 = np.asarray(f(t, y), dtype=np.complex128)
        k2 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k1), dtype=np.complex128)
        k3 = np.asarray(f(t + 0.5 * h, y + 0.5 * h * k2), dtype=np.complex128)
        k4 = np.asarray(f(t + h, y + h * k3), dtype=np.complex128)
        y = y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(y)):
            raise IntegrationError((i + 1) * h)
        if (i + 1) % stride == 0 or i + 1 == n:
            ts.append((i + 1) * h)
            ys.append(y.copy())
    return np.array(ts), np.array(ys)


@dataclass
class Trajectory:
    """Sampled solution. ``states`` has one row per sample.

    For first-order runs the columns are ``(Omega1, Omega2, rho)``; for
    second-order runs ``(Omega1, Omega2, dOmega1, dOmega2)`` and ``rho`` is
    reconstructed from the attached system when available.
    """

    times: np.ndarray
    states: np.ndarray
    system: object = field(default=None, repr=False)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=np.float64)
        self.states = np.asarray(self.states, dtype=np.complex128)
        if self.states.ndim != 2 or len(self.times) != self.states.shape[0]:
            raise ValueError("times and states must have matching lengths")

    def __len__(self) -> int:
        return len(self.times)

    @property
    def is_second_order(self) -> bool:
        return self.states.shape[1] == 4

    @property
    def omega1(self) -> np.ndarray:
        return self.states[:, 0]

    @property
    def omega2(self) -> np.ndarray:
        return self.states[:, 1]

    @property
    def rho(self) -> np.ndarray:
        if not self.is_second_order:
            return self.states[:, 2]
        if self.system is None or not hasattr(self.system, "coherence"):
            return np.full(len(self), np.nan + 0j)
        return self.system.coherence(self.times, self.states[:, 0], self.states[:, 2])

    @property
    def abs_omega1(self) -> np.ndarray:
        return np.abs(self.omega1)

    @property
    def abs_omega2(self) -> np.ndarray:
        return np.abs(self.omega2)

    @property
    def abs_rho(self) -> np.ndarray:
        return np.abs(self.rho)

    @property
    def energy(self) -> np.ndarray:
        return conserved_energy(omega1=self.omega1, omega2=self.omega2, rho=self.rho)

    def state(self, i: int):
        row = self.states[i]
        return SecondOrderState.from_array(row) if self.is_second_order else ModeState.from_array(row)


def integrate(rhs, s0, controls: IntegrationControls) -> Trajectory:
    """Integrate ``dy/dt = rhs(t, y)`` from ``t = 0`` with classical RK4.

    Parameters
    ----------
    rhs
        Either a system object exposing a compiled ``kernel`` and a
        ``params`` vector (see :mod:`gammaswitch.dynamics`), which runs in
        compiled code, or any callable ``rhs(t, y) -> dy/dt`` on complex
        arrays, which runs in Python.
    s0
        Initial state: a :class:`ModeState`, :class:`SecondOrderState` or
        array-like of complex numbers.
    controls
        Window, step and sampling stride.

    Raises
    ------
    IntegrationError
        If the state becomes non-finite; carries the time of failure.
    """
    y0 = s0.as_array() if hasattr(s0, "as_array") else np.atleast_1d(np.asarray(s0, dtype=np.complex128))
    if not np.all(np.isfinite(y0)):
        raise IntegrationError(0.0)
    n, h, stride = controls.n_steps, controls.step, int(controls.sample_stride)
    kernel = getattr(rhs, "kernel", None)
    if kernel is not None:
        ts, ys, failed_at = _rk4_loop(kernel, y0.copy(), rhs.params, h, n, stride)
        if failed_at >= 0:
            raise IntegrationError(failed_at * h)
        return Trajectory(ts, ys, rhs)
    ts, ys = _rk4_python(rhs, y0, h, n, stride)
    return Trajectory(ts, ys, None)
