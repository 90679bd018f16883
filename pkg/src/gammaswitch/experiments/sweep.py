"""One-parameter sweeps of the peak Bragg-wave amplitude."""
from __future__ import annotations

import csv
import dataclasses
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .config import ScenarioConfig
from .peaks import first_peak
from .runner import run_scenario

PARAMETERS = ("kappa", "nu_d", "delta")


@dataclass(frozen=True)
class SweepRow:
    value: float
    peak_abs_omega2: float
    time_of_peak: float


def with_parameter(base: ScenarioConfig, parameter: str, value: float) -> ScenarioConfig:
    """Copy of ``base`` with one swept parameter replaced."""
    if parameter == "kappa":
        drive = dataclasses.replace(base.drive, kappa1=value, kappa2=value)
        return dataclasses.replace(base, drive=drive)
    if parameter == "nu_d":
        return dataclasses.replace(base, drive=dataclasses.replace(base.drive, nu_d=value))
    if parameter == "delta":
        return dataclasses.replace(base, delta1=value, delta2=value)
    raise ValueError(f"unknown sweep parameter {parameter!r}; choose from {PARAMETERS}")


def _measure(config: ScenarioConfig, value: float) -> SweepRow:
    res = run_scenario(config)
    mag = res.trajectory.abs_omega2 / abs(config.amplitude)
    t_peak, _ = first_peak(res.trajectory.times, mag)
    return SweepRow(float(value), float(np.max(mag)), t_peak)


def sweep(parameter: str, values, base: ScenarioConfig, workers: int | None = None) -> list[SweepRow]:
    """Integrate ``base`` once per value; rows come back in input order.

    ``peak_abs_omega2`` is the window maximum of ``|Omega2| / |A|`` and
    ``time_of_peak`` the time of the first major maximum (``1/Omega_a``).
    """
    values = [float(v) for v in values]
    if len(values) < 2:
        raise ValueError("a sweep needs at least two values")
    if not all(np.isfinite(values)):
        raise ValueError("sweep values must be finite")
    configs = [with_parameter(base, parameter, v) for v in values]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_measure, configs, values))


def half_width(rows: list[SweepRow]) -> float:
    """Resonance width of ``peak_abs_omega2`` against the swept value.

    Twice the distance from the maximum to the nearest half-maximum
    crossing, so a slowly decaying background on one side does not hide
    the width of the resonance. For a symmetric curve this is the full
    width at half maximum. Crossings are linearly interpolated; ``nan``
    if the curve never falls below half maximum.
    """
    x = np.array([r.value for r in rows])
    y = np.array([r.peak_abs_omega2 for r in rows])
    i = int(np.argmax(y))
    half = 0.5 * y[i]
    sides = []
    for j in range(i, 0, -1):
        if y[j - 1] < half <= y[j]:
            left = x[j - 1] + (half - y[j - 1]) * (x[j] - x[j - 1]) / (y[j] - y[j - 1])
            sides.append(x[i] - left)
            break
    for j in range(i, len(y) - 1):
        if y[j + 1] < half <= y[j]:
            right = x[j] + (y[j] - half) * (x[j + 1] - x[j]) / (y[j] - y[j + 1])
            sides.append(right - x[i])
            break
    return 2.0 * min(sides) if sides else float("nan")


def write_sweep_csv(rows, path: str | Path, parameter: str = "value") -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([parameter, "peak_abs_omega2", "time_of_peak"])
        for r in rows:
            w.writerow([format(v, ".17g") for v in (r.value, r.peak_abs_omega2, r.time_of_peak)])
    return path
