"""Running a single scenario."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..dynamics import FirstOrderSystem, SecondOrderSystem
from ..integrator import Trajectory, integrate
from .config import PS, ScenarioConfig


@dataclass
class ScenarioResult:
    config: ScenarioConfig
    trajectory: Trajectory

    @property
    def omega_a(self) -> float | None:
        return self.config.omega_a

    @property
    def time_unit(self) -> str:
        return "ps" if self.omega_a else "1/Omega_a"

    @property
    def times(self) -> np.ndarray:
        """Sample times in picoseconds when ``Omega_a`` is physical."""
        t = self.trajectory.times
        return t / self.omega_a / PS if self.omega_a else t


def build_system(config: ScenarioConfig):
    cls = SecondOrderSystem if config.integration.system == "second" else FirstOrderSystem
    return cls(config.delta1, config.delta2, config.drive)


def run_scenario(config: ScenarioConfig) -> ScenarioResult:
    system = build_system(config)
    traj = integrate(system, system.initial_state(config.amplitude), config.controls())
    return ScenarioResult(config, traj)
