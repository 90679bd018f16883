"""Two-wave coupled-mode dynamics of gamma rays in a vibrating nuclear array.

All quantities are dimensionless: time in units of ``1/Omega_a``, every
frequency (detunings, drive, transition-frequency shift) in units of
``Omega_a``, field amplitudes in units of the incident amplitude and the
nuclear coherence ``rho`` in units of ``A/Omega_a``. With this scaling the
collective frequency drops out of the equations (``Omega_a = 1``).

The nuclei move as ``f(t) = d sin(nu_d t)`` along ``n``. The first-order
system evolves ``(Omega1, Omega2, rho)``::

    dOmega1/dt = -i D1 Omega1 + i exp(-i k1 sin(nu t)) rho
    dOmega2/dt = -i D2 Omega2 + i exp(-i k2 sin(nu t)) rho
    drho/dt    =  i dw(t) rho + i Omega1 exp(i k1 sin(nu t))
                              + i Omega2 exp(i k2 sin(nu t))

and the equivalent second-order system evolves ``(Omega1, Omega2)`` with
their time derivatives after ``rho`` has been eliminated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from numba import njit

from .materials import C_LIGHT

# Layout of the parameter vector shared by the compiled kernels.
P_DELTA1, P_DELTA2, P_KAPPA1, P_KAPPA2, P_NU = 0, 1, 2, 3, 4
P_SHIFT0, P_SHIFT1, P_SHIFT_NU, P_SHIFT_PHASE = 5, 6, 7, 8
N_PARAMS = 9


@dataclass(frozen=True)
class Geometry:
    """Incident wavevector, Bragg vector and vibration of the array.

    Vectors are 3-tuples in m^-1; ``amplitude`` is the vibration amplitude
    ``d`` in metres.
    """

    k1: tuple[float, float, float]
    bragg_vector: tuple[float, float, float]
    direction: tuple[float, float, float]
    amplitude: float

    def __post_init__(self):
        for name in ("k1", "bragg_vector", "direction"):
            vec = tuple(float(v) for v in getattr(self, name))
            if len(vec) != 3:
                raise ValueError(f"{name} must be a 3-vector")
            object.__setattr__(self, name, vec)
        if abs(math.fsum(v * v for v in self.direction) - 1.0) > 1e-12:
            raise ValueError("vibration direction must be a unit vector")
        if self.amplitude < 0:
            raise ValueError("vibration amplitude must be non-negative")

    @property
    def k2(self) -> tuple[float, float, float]:
        return tuple(a + b for a, b in zip(self.k1, self.bragg_vector))

    @property
    def is_perpendicular(self) -> bool:
        """True when the vibration is perpendicular to ``k1 - k2``."""
        scale = math.sqrt(math.fsum(b * b for b in self.bragg_vector)) or 1.0
        return abs(_dot(self.bragg_vector, self.direction)) <= 1e-12 * scale


def _dot(a, b) -> float:
    return math.fsum(x * y for x, y in zip(a, b))


def modulation_amplitudes(geometry: Geometry) -> tuple[float, float]:
    """Dimensionless modulation amplitudes ``kappa_i = d k_i . n``."""
    d = geometry.amplitude
    return d * _dot(geometry.k1, geometry.direction), d * _dot(geometry.k2, geometry.direction)


def detuning_from_wavevector(k: float, omega_ab: float, omega_a: float = 1.0) -> float:
    """Detuning ``(c^2 k^2 - omega_ab^2) / 2 omega_ab`` of a plane wave.

    ``k`` in m^-1, ``omega_ab`` in s^-1. The result is divided by
    ``omega_a``, so passing the collective frequency gives the detuning in
    the dimensionless units used by the dynamics.
    """
    if not k > 0:
        raise ValueError("wavevector magnitude must be positive")
    ck = C_LIGHT * k
    # factored form keeps the near-resonant difference exact
    return (ck - omega_ab) * (ck + omega_ab) / (2.0 * omega_ab) / omega_a


@dataclass(frozen=True)
class FrequencyShift:
    """External modulation of the nuclear transition frequency.

    ``dw(t) = offset + amplitude * cos(frequency * t + phase)``.
    """

    offset: float = 0.0
    amplitude: float = 0.0
    frequency: float = 0.0
    phase: float = 0.0

    def __call__(self, t):
        return self.offset + self.amplitude * np.cos(self.frequency * t + self.phase)

    @property
    def is_zero(self) -> bool:
        return self.offset == 0.0 and self.amplitude == 0.0

    @property
    def max_rate(self) -> float:
        return abs(self.offset) + abs(self.amplitude) + abs(self.frequency)


@dataclass(frozen=True)
class DriveParams:
    """Lattice vibration seen by the two waves.

    Parameters
    ----------
    nu_d : float
        Vibration frequency.
    kappa1, kappa2 : float
        Modulation amplitudes ``d k_i . n`` of the incident and Bragg wave.
    freq_shift : FrequencyShift
        Optional modulation of the transition frequency; zero by default.
    """

    nu_d: float = 0.0
    kappa1: float = 0.0
    kappa2: float = 0.0
    freq_shift: FrequencyShift = FrequencyShift()

    def __post_init__(self):
        for name in ("nu_d", "kappa1", "kappa2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")

    @classmethod
    def perpendicular(cls, nu_d: float, kappa: float, freq_shift: FrequencyShift | None = None):
        """Vibration perpendicular to ``k1 - k2``, so both waves see ``kappa``."""
        return cls(nu_d, kappa, kappa, freq_shift or FrequencyShift())

    @classmethod
    def from_geometry(cls, geometry: Geometry, nu_d: float, freq_shift: FrequencyShift | None = None):
        k1, k2 = modulation_amplitudes(geometry)
        return cls(nu_d, k1, k2, freq_shift or FrequencyShift())

    @property
    def is_static(self) -> bool:
        return (self.kappa1 == 0.0 and self.kappa2 == 0.0) or self.nu_d == 0.0

    def phase(self, t, which: int = 1):
        """Displacement phase ``kappa_i sin(nu_d t)``."""
        kappa = self.kappa1 if which == 1 else self.kappa2
        return kappa * np.sin(self.nu_d * t)


@dataclass(frozen=True)
class ModeState:
    """Incident wave, Bragg wave and nuclear coherence at one instant."""

    omega1: complex
    omega2: complex
    rho: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.omega1, self.omega2, self.rho], dtype=np.complex128)

    @classmethod
    def from_array(cls, y) -> "ModeState":
        return cls(complex(y[0]), complex(y[1]), complex(y[2]))

    def is_finite(self) -> bool:
        return all(np.isfinite(v) for v in (self.omega1, self.omega2, self.rho))


@dataclass(frozen=True)
class SecondOrderState:
    """Both wave amplitudes and their time derivatives."""

    omega1: complex
    omega2: complex
    domega1: complex
    domega2: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.omega1, self.omega2, self.domega1, self.domega2], dtype=np.complex128)

    @classmethod
    def from_array(cls, y) -> "SecondOrderState":
        return cls(complex(y[0]), complex(y[1]), complex(y[2]), complex(y[3]))


@njit(cache=True, nogil=True)
def first_order_kernel(t, y, p, out):
    s = math.sin(p[P_NU] * t)
    ph1 = p[P_KAPPA1] * s
    ph2 = p[P_KAPPA2] * s
    # exp(-i kappa_i sin(nu t))
    e1 = complex(math.cos(ph1), -math.sin(ph1))
    e2 = complex(math.cos(ph2), -math.sin(ph2))
    dw = p[P_SHIFT0] + p[P_SHIFT1] * math.cos(p[P_SHIFT_NU] * t + p[P_SHIFT_PHASE])
    rho = y[2]
    out[0] = 1j * (e1 * rho - p[P_DELTA1] * y[0])
    out[1] = 1j * (e2 * rho - p[P_DELTA2] * y[1])
    out[2] = 1j * (dw * rho + y[0] * e1.conjugate() + y[1] * e2.conjugate())


@njit(cache=True, nogil=True)
def second_order_kernel(t, y, p, out):
    nu = p[P_NU]
    s = math.sin(nu * t)
    c = math.cos(nu * t)
    d1 = p[P_DELTA1]
    d2 = p[P_DELTA2]
    f1 = p[P_KAPPA1] * nu * c
    f2 = p[P_KAPPA2] * nu * c
    ph = (p[P_KAPPA1] - p[P_KAPPA2]) * s
    # exp(-i (kappa1 - kappa2) sin(nu t))
    cpl = complex(math.cos(ph), -math.sin(ph))
    dw = p[P_SHIFT0] + p[P_SHIFT1] * math.cos(p[P_SHIFT_NU] * t + p[P_SHIFT_PHASE])
    w1, w2, v1, v2 = y[0], y[1], y[2], y[3]
    out[0] = v1
    out[1] = v2
    out[2] = -1j * (d1 + f1) * v1 + d1 * f1 * w1 - (w1 + w2 * cpl) + 1j * dw * (v1 + 1j * d1 * w1)
    out[3] = -1j * (d2 + f2) * v2 + d2 * f2 * w2 - (w2 + w1 * cpl.conjugate()) + 1j * dw * (v2 + 1j * d2 * w2)


def _pack(delta1: float, delta2: float, drive: DriveParams) -> np.ndarray:
    fs = drive.freq_shift
    return np.array(
        [delta1, delta2, drive.kappa1, drive.kappa2, drive.nu_d,
         fs.offset, fs.amplitude, fs.frequency, fs.phase],
        dtype=np.float64,
    )


@dataclass(frozen=True)
class FirstOrderSystem:
    """Right-hand side for ``(Omega1, Omega2, rho)``; callable as ``f(t, y)``."""

    delta1: float
    delta2: float
    drive: DriveParams = DriveParams()

    kernel: ClassVar = first_order_kernel
    state_type: ClassVar = ModeState

    @property
    def params(self) -> np.ndarray:
        return _pack(self.delta1, self.delta2, self.drive)

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        out = np.empty(3, dtype=np.complex128)
        first_order_kernel(float(t), np.asarray(y, dtype=np.complex128), self.params, out)
        return out

    def initial_state(self, amplitude: complex = 1.0) -> ModeState:
        return ModeState(complex(amplitude), 0j, 0j)

    def max_rate(self) -> float:
        """Fastest angular frequency present in the solution."""
        return _max_rate(self.delta1, self.delta2, self.drive)


@dataclass(frozen=True)
class SecondOrderSystem:
    """Right-hand side for ``(Omega1, Omega2, dOmega1/dt, dOmega2/dt)``.

    The transition-frequency shift, when present, enters through the
    ``i dw(t) (d/dt + i D_j) Omega_j`` term that eliminating ``rho``
    produces; it vanishes for the default drive.
    """

    delta1: float
    delta2: float
    drive: DriveParams = DriveParams()

    kernel: ClassVar = second_order_kernel
    state_type: ClassVar = SecondOrderState

    @property
    def params(self) -> np.ndarray:
        return _pack(self.delta1, self.delta2, self.drive)

    def __call__(self, t: float, y: np.ndarray) -> np.ndarray:
        out = np.empty(4, dtype=np.complex128)
        second_order_kernel(float(t), np.asarray(y, dtype=np.complex128), self.params, out)
        return out

    def initial_state(self, amplitude: complex = 1.0) -> SecondOrderState:
        # rho(0) = 0 fixes the initial slopes through the first-order equations
        a = complex(amplitude)
        return SecondOrderState(a, 0j, -1j * self.delta1 * a, 0j)

    def max_rate(self) -> float:
        return _max_rate(self.delta1, self.delta2, self.drive)

    def coherence(self, t, omega1, domega1):
        """Recover ``rho`` from the first wave equation."""
        phase = self.drive.phase(t, 1)
        return (domega1 + 1j * self.delta1 * omega1) * np.exp(1j * phase) / 1j


def _max_rate(delta1, delta2, drive: DriveParams) -> float:
    kappa = max(abs(drive.kappa1), abs(drive.kappa2))
    return max(
        max(abs(delta1), abs(delta2)) + kappa * abs(drive.nu_d) + drive.freq_shift.max_rate,
        abs(drive.nu_d),
        math.sqrt(2.0),
    )


def rhs_first_order(state: ModeState, t: float, delta1: float, delta2: float,
                    drive: DriveParams = DriveParams()) -> ModeState:
    """Time derivative of ``state`` under the first-order coupled-mode system."""
    return ModeState.from_array(FirstOrderSystem(delta1, delta2, drive)(t, state.as_array()))


def rhs_second_order(state: SecondOrderState, t: float, delta1: float, delta2: float,
                     drive: DriveParams = DriveParams()) -> SecondOrderState:
    """Time derivative of ``state`` under the second-order two-wave system."""
    return SecondOrderState.from_array(SecondOrderSystem(delta1, delta2, drive)(t, state.as_array()))


def conserved_energy(state=None, *, omega1=None, omega2=None, rho=None):
    """``|Omega1|^2 + |Omega2|^2 + |rho|^2`` (``Omega_a = 1``).

    Accepts a :class:`ModeState` or the three components as keyword arrays.
    """
    if state is not None:
        omega1, omega2, rho = state.omega1, state.omega2, state.rho
    return np.abs(omega1) ** 2 + np.abs(omega2) ** 2 + np.abs(rho) ** 2


def integral_of_motion_residual(state, t, amplitude: complex, delta: float):
    """``|Omega1 - Omega2 - A exp(-i D t)|``.

    Only meaningful for equal detunings and equal modulation amplitudes;
    the regime is not checked.
    """
    return np.abs(state.omega1 - state.omega2 - amplitude * np.exp(-1j * delta * np.asarray(t)))
