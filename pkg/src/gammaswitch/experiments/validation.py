"""Invariant suites run over a fixed grid of detunings and drives.

Each suite integrates the grid and reports, per case, the worst deviation
of one invariant against its tolerance:

``analytic``     static runs against the closed-form solution (all components)
``conservation`` drift of ``|Omega1|^2 + |Omega2|^2 + |rho|^2``
``integral``     residual of ``Omega1 - Omega2 = A exp(-i Delta t)``
``equivalence``  first-order against second-order system in ``(Omega1, Omega2)``
``rwa``          driven ``|Omega2|`` against the rotating-wave closed form

Classical RK4 damps an oscillation of phase increment ``z`` per step by
about ``z^6 / 72`` in energy, so the default 50 steps per period
(``z ~ 0.126``) loses ~5e-8 per step. The grid is therefore integrated with
:data:`VALIDATION_STEPS_PER_PERIOD` steps per fastest period.
"""
from __future__ import annotations

import functools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..analytic import bessel_j, rwa_vibrating_solution, static_solution, transfer_time_static
from ..dynamics import DriveParams, FirstOrderSystem, FrequencyShift, SecondOrderSystem, integral_of_motion_residual
from ..integrator import IntegrationControls, Trajectory, integrate, step_size_for

SUITES = ("analytic", "conservation", "integral", "equivalence", "rwa")

GRID_DELTAS = (0.0, 10.0, 250.0)
GRID_KAPPAS = (0.0, 0.07, 0.21, 1.841)
GRID_MODULATION = FrequencyShift(offset=0.3, amplitude=1.5, frequency=7.0, phase=0.4)
RWA_KAPPAS = (0.21, 0.14, 0.07)
RWA_DELTA = 250.0

VALIDATION_STEPS_PER_PERIOD = 4000
RWA_STEPS_PER_PERIOD = 200
MAX_SAMPLES = 5000
MAX_WINDOW = 450.0
MIN_WINDOW = 10.0

TOLERANCES = {
    "analytic": 1e-6,
    "conservation": 1e-8,
    "integral": 1e-8,
    "equivalence": 1e-6,
    "rwa": 0.05,
}

AMPLITUDE = 1.0 + 0j


@dataclass(frozen=True)
class GridCase:
    delta: float
    kappa: float
    nu_d: float
    freq_shift: FrequencyShift = FrequencyShift()

    @property
    def label(self) -> str:
        s = f"delta={self.delta:g} kappa={self.kappa:g} nu_d={self.nu_d:.6g}"
        if not self.freq_shift.is_zero:
            fs = self.freq_shift
            s += f" dw={fs.offset:g}+{fs.amplitude:g}cos({fs.frequency:g}t+{fs.phase:g})"
        return s

    @property
    def drive(self) -> DriveParams:
        return DriveParams.perpendicular(self.nu_d, self.kappa, self.freq_shift)

    @property
    def is_static(self) -> bool:
        return self.kappa == 0.0 or self.nu_d == 0.0

    @property
    def t_end(self) -> float:
        """About one transfer time: static ``pi/|omega_-|`` or the RWA half-beat."""
        if self.is_static:
            t = transfer_time_static(self.delta).exact
        else:
            coupling = bessel_j(1, self.kappa)
            t = 2.0 * math.pi / math.hypot(self.nu_d - self.delta, 2.0 * math.sqrt(2.0) * coupling)
        return min(max(1.1 * t, MIN_WINDOW), MAX_WINDOW)


def validation_grid(modulation: bool = True) -> list[GridCase]:
    """Detunings x amplitudes x drives ``{Delta, Delta +- 2 J1(kappa)}``.

    With ``modulation`` a transition-frequency modulation is added to the
    static and the ``kappa = 0.21`` resonant case of each detuning.
    """
    cases = []
    for delta in GRID_DELTAS:
        for kappa in GRID_KAPPAS:
            if kappa == 0.0:
                cases.append(GridCase(delta, kappa, delta))
                continue
            j1 = bessel_j(1, kappa)
            for nu in (delta, delta - 2.0 * j1, delta + 2.0 * j1):
                cases.append(GridCase(delta, kappa, nu))
    if modulation:
        for delta in GRID_DELTAS:
            for kappa in (0.0, 0.21):
                cases.append(GridCase(delta, kappa, delta, GRID_MODULATION))
    return cases


@functools.lru_cache(maxsize=None)
def run_case(case: GridCase, system: str = "first",
             steps_per_period: int = VALIDATION_STEPS_PER_PERIOD) -> Trajectory:
    """Integrate one grid case; results are memoised per process."""
    cls = SecondOrderSystem if system == "second" else FirstOrderSystem
    sysm = cls(case.delta, case.delta, case.drive)
    dt = step_size_for(case.delta + case.freq_shift.max_rate, case.nu_d, case.kappa, steps_per_period)
    n = math.ceil(case.t_end / dt)
    controls = IntegrationControls(case.t_end, dt, max(1, n // MAX_SAMPLES))
    return integrate(sysm, sysm.initial_state(AMPLITUDE), controls)


@dataclass(frozen=True)
class CaseResult:
    case: str
    metric: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return bool(self.value < self.tolerance)


@dataclass
class ValidationReport:
    suite: str
    cases: list[CaseResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def worst(self) -> CaseResult:
        return max(self.cases, key=lambda c: c.value / c.tolerance)

    def failures(self) -> list[CaseResult]:
        return [c for c in self.cases if not c.passed]

    def format_text(self) -> str:
        lines = [f"[{self.suite}] {'PASS' if self.passed else 'FAIL'}  "
                 f"({len(self.cases)} cases, worst {self.worst.metric} = {self.worst.value:.3e}"
                 f" vs tol {self.worst.tolerance:.1e})"]
        for c in self.cases:
            mark = "ok  " if c.passed else "FAIL"
            lines.append(f"  {mark} {c.case:<60s} {c.metric} = {c.value:.3e}")
        return "\n".join(lines)


def _map(fn, items, workers):
    items = list(items)
    if workers == 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


def _analytic(case: GridCase) -> CaseResult:
    traj = run_case(case)
    exact = static_solution(traj.times, AMPLITUDE, case.delta)
    ref = np.stack([exact.omega1, exact.omega2, exact.rho], axis=1)
    err = float(np.max(np.abs(traj.states - ref))) / abs(AMPLITUDE)
    return CaseResult(case.label, "max |numeric - closed form|", err, TOLERANCES["analytic"])


def _conservation(case: GridCase) -> CaseResult:
    energy = run_case(case).energy
    drift = float(np.max(np.abs(energy - energy[0])) / energy[0])
    return CaseResult(case.label, "max relative energy drift", drift, TOLERANCES["conservation"])


def _integral(case: GridCase) -> CaseResult:
    traj = run_case(case)
    res = integral_of_motion_residual(traj, traj.times, AMPLITUDE, case.delta)
    return CaseResult(case.label, "max integral-of-motion residual / |A|",
                      float(np.max(res)) / abs(AMPLITUDE), TOLERANCES["integral"])


def _equivalence(case: GridCase) -> CaseResult:
    a = run_case(case, "first")
    b = run_case(case, "second")
    err = float(np.max(np.abs(a.states[:, :2] - b.states[:, :2]))) / abs(AMPLITUDE)
    return CaseResult(case.label, "max |first - second order|", err, TOLERANCES["equivalence"])


def rwa_case(kappa: float) -> GridCase:
    return GridCase(RWA_DELTA, kappa, RWA_DELTA)


def _rwa(case: GridCase) -> CaseResult:
    traj = run_case(case, "first", RWA_STEPS_PER_PERIOD)
    _, w2 = rwa_vibrating_solution(traj.times, AMPLITUDE, case.delta, case.nu_d, case.kappa)
    err = float(np.max(np.abs(traj.abs_omega2 - np.abs(w2)))) / abs(AMPLITUDE)
    return CaseResult(case.label, "max | |Omega2| - RWA | / |A|", err, TOLERANCES["rwa"])


def suite_cases(suite: str) -> list[GridCase]:
    if suite == "analytic":
        return [c for c in validation_grid(modulation=False) if c.kappa == 0.0]
    if suite in ("conservation", "integral", "equivalence"):
        return validation_grid()
    if suite == "rwa":
        return [rwa_case(k) for k in RWA_KAPPAS]
    raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


_CHECKS = {
    "analytic": _analytic,
    "conservation": _conservation,
    "integral": _integral,
    "equivalence": _equivalence,
    "rwa": _rwa,
}


def validate(suite: str, workers: int | None = None) -> ValidationReport:
    """Run one invariant suite over its grid."""
    cases = suite_cases(suite)
    return ValidationReport(suite, _map(_CHECKS[suite], cases, workers))
