"""Reproduction of the published figures from pinned scenario files."""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from ..analytic import (resonant_static_solution, rwa_vibrating_solution,
                        transfer_time_static, transfer_time_vibrating)
from .config import ScenarioConfig, load_config
from .output import write_figure_svg, write_trajectory_csv
from .peaks import first_peak, zeros_of_magnitude
from .runner import ScenarioResult, run_scenario

FIGURES = {
    "3a": ("fig3a",),
    "3b": ("fig3b",),
    "4": ("fig4_kappa21", "fig4_kappa14", "fig4_kappa07"),
    "5": ("fig5_static", "fig5_driven"),
}


def scenario_path(name: str) -> Path:
    path = resources.files("gammaswitch") / "scenarios" / f"{name}.yaml"
    return Path(str(path))


def load_scenario(name: str, overrides=()) -> ScenarioConfig:
    path = scenario_path(name)
    if not path.is_file():
        raise KeyError(f"no pinned scenario named {name!r}")
    return load_config(path, overrides)


@dataclass
class FigureResult:
    figure: str
    results: dict[str, ScenarioResult]
    metrics: dict[str, float] = field(default_factory=dict)
    paths: list[Path] = field(default_factory=list)


def run_scenarios(configs, workers: int | None = None) -> list[ScenarioResult]:
    """Run independent scenarios, possibly in parallel; output keeps input order."""
    configs = list(configs)
    if workers == 1 or len(configs) == 1:
        return [run_scenario(c) for c in configs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(run_scenario, configs))


def _metrics_3a(res: ScenarioResult) -> dict:
    traj = res.trajectory
    amp = abs(res.config.amplitude)
    exact = resonant_static_solution(traj.times, res.config.amplitude)
    zeros = zeros_of_magnitude(traj.times, traj.abs_omega1 / amp)
    out = {
        "max_abs_error_omega1": float(np.max(np.abs(traj.abs_omega1 - np.abs(exact.omega1))) / amp),
        "max_abs_error_omega2": float(np.max(np.abs(traj.abs_omega2 - np.abs(exact.omega2))) / amp),
        "max_complex_error": float(np.max(np.abs(traj.states[:, :3] - np.stack(
            [exact.omega1, exact.omega2, exact.rho], axis=1)))) / amp,
        "first_zero_time": zeros[0] if zeros else math.nan,
        "expected_first_zero_time": math.pi / math.sqrt(2.0),
        "expected_frequency": math.sqrt(2.0),
    }
    out["measured_frequency"] = 2.0 * math.pi / (zeros[1] - zeros[0]) if len(zeros) > 1 else math.nan
    return out


def _metrics_3b(res: ScenarioResult) -> dict:
    traj = res.trajectory
    t_peak, _ = first_peak(traj.times, traj.abs_omega2)
    return {
        "first_peak_time": t_peak,
        "expected_peak_time": transfer_time_static(res.config.delta1).exact,
    }


def _metrics_4(results) -> dict:
    out = {}
    for res in results:
        cfg = res.config
        kappa = cfg.drive.kappa1
        traj = res.trajectory
        t_peak, _ = first_peak(traj.times, traj.abs_omega2)
        _, w2 = rwa_vibrating_solution(traj.times, cfg.amplitude, cfg.delta1, cfg.drive.nu_d, kappa)
        tag = f"kappa={kappa:g}"
        out[f"first_peak_time[{tag}]"] = t_peak
        out[f"expected_peak_time[{tag}]"] = transfer_time_vibrating(kappa).approximate
        out[f"rwa_max_deviation[{tag}]"] = float(np.max(np.abs(traj.abs_omega2 - np.abs(w2)))) / abs(cfg.amplitude)
    return out


def _metrics_5(static: ScenarioResult, driven: ScenarioResult) -> dict:
    t_static, _ = first_peak(static.times, static.trajectory.abs_omega2)
    t_driven, _ = first_peak(driven.times, driven.trajectory.abs_omega2)
    return {
        "static_transfer_ps": t_static,
        "driven_transfer_ps": t_driven,
        "transfer_ratio": t_static / t_driven,
    }


def reproduce_figure(figure: str, output_dir: str | Path | None = None,
                     workers: int | None = None) -> FigureResult:
    """Run the scenarios behind one figure and, optionally, write CSV + SVG.

    Parameters
    ----------
    figure : {"3a", "3b", "4", "5"}
    output_dir : path, optional
        Where to write one CSV per scenario and one SVG per figure.
    """
    if figure not in FIGURES:
        raise ValueError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")
    names = FIGURES[figure]
    results = run_scenarios([load_scenario(n) for n in names], workers)
    fig = FigureResult(figure, dict(zip(names, results)))

    if figure == "3a":
        fig.metrics = _metrics_3a(results[0])
    elif figure == "3b":
        fig.metrics = _metrics_3b(results[0])
    elif figure == "4":
        fig.metrics = _metrics_4(results)
    else:
        fig.metrics = _metrics_5(*results)

    if output_dir is not None:
        out = Path(output_dir)
        out.mkdir(parents=True, exist_ok=True)
        for name, res in fig.results.items():
            fig.paths.append(write_trajectory_csv(res, out / f"{name}.csv"))
        fig.paths.append(_plot(fig, out / f"fig{figure}.svg"))
    return fig


def _plot(fig: FigureResult, path: Path) -> Path:
    curves = []
    first = next(iter(fig.results.values()))
    if fig.figure in ("3a", "3b"):
        curves.append(("|Omega1|", first.times, first.trajectory.abs_omega1, "-"))
        curves.append(("|Omega2|", first.times, first.trajectory.abs_omega2, "--"))
    elif fig.figure == "4":
        for res in fig.results.values():
            curves.append((f"kappa = {res.config.drive.kappa1:g}", res.times, res.trajectory.abs_omega2, "-"))
    else:
        for res in fig.results.values():
            style = "-" if res.config.drive.kappa1 else "--"
            tag = "vibrating" if res.config.drive.kappa1 else "static"
            curves.append((f"|Omega1| {tag}", res.times, res.trajectory.abs_omega1, style))
            curves.append((f"|Omega2| {tag}", res.times, res.trajectory.abs_omega2, style))
    xlabel = "t (ps)" if first.omega_a else "Omega_a t"
    return write_figure_svg(curves, path, title=f"Figure {fig.figure}", xlabel=xlabel)

