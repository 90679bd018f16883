"""CSV and SVG artifacts."""
from __future__ import annotations

import csv
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

CSV_HEADER = ("t", "abs_omega1", "abs_omega2", "abs_rho", "energy",
              "re_omega1", "im_omega1", "re_omega2", "im_omega2", "re_rho", "im_rho")


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def write_trajectory_csv(result, path: str | Path) -> Path:
    """One row per sample; time in ps if a physical ``Omega_a`` is configured."""
    traj = result.trajectory
    cols = (result.times, traj.abs_omega1, traj.abs_omega2, traj.abs_rho, traj.energy,
            traj.omega1.real, traj.omega1.imag, traj.omega2.real, traj.omega2.imag,
            traj.rho.real, traj.rho.imag)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for row in zip(*cols):
            w.writerow([_fmt(v) for v in row])
    return path


def read_trajectory_csv(path: str | Path) -> dict:
    with Path(path).open(encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    return {name: [float(r[i]) for r in body] for i, name in enumerate(header)}


def write_figure_svg(curves, path: str | Path, *, title: str = "", xlabel: str = "t") -> Path:
    """Plot ``(label, t, y, style)`` curves of magnitudes against time."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    for label, t, y, style in curves:
        ax.plot(t, y, style, label=label, lw=1.2)
    ax.set_xlabel(xlabel)
    ax.set_ylabel("amplitude / |A|")
    if title:
        ax.set_title(title)
    ax.legend(loc="best", fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
