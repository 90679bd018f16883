"""Command-line entry point: ``gammaswitch <subcommand> ...``.

Exit status is 0 on success, 1 on a usage or configuration error, 2 when a
validation suite fails and 3 when an integration produces non-finite values.
Artifacts go to ``--out`` or, failing that, to ``$GAMMASWITCH_OUTPUT_DIR``
or ``./gammaswitch-output``; missing directories are created.
"""
from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .analytic import (optimal_kappa, rwa_vibrating_solution, static_solution,
                       transfer_time_static, transfer_time_vibrating)
from .experiments.config import PS, THZ, ConfigError, dump_config, load_config
from .experiments.design import design_switch
from .experiments.figures import FIGURES, reproduce_figure
from .experiments.output import write_figure_svg, write_trajectory_csv
from .experiments.peaks import first_peak
from .experiments.runner import run_scenario
from .experiments.sweep import PARAMETERS, half_width, sweep, write_sweep_csv
from .experiments.validation import SUITES, validate
from .integrator import IntegrationError
from .materials import MaterialParams, builtin_isotopes, load_isotope_file, lookup_isotope

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

OUTPUT_ENV = "GAMMASWITCH_OUTPUT_DIR"
DEFAULT_OUTPUT = "gammaswitch-output"

_QUANTITY_RE = re.compile(r"^\s*([-+]?[0-9.]+(?:[eE][-+]?[0-9]+)?)\s*(thz|ps)?\s*$", re.IGNORECASE)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad input; 2 is reserved for validation
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _quantity(text: str) -> tuple[float, str | None]:
    m = _QUANTITY_RE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"not a number: {text!r} (allowed suffixes: thz, ps)")
    return float(m.group(1)), (m.group(2) or "").lower() or None


def _normalized(q: tuple[float, str | None], omega_a: float | None, kind: str, name: str) -> float:
    """Convert a possibly suffixed CLI number to ``Omega_a`` units."""
    value, unit = q
    if unit is None:
        return value
    if omega_a is None:
        raise UsageError(f"{name}: unit '{unit}' needs a physical Omega_a (--omega-a-thz or --isotope)")
    if unit == "thz" and kind == "frequency":
        return value * THZ / omega_a
    if unit == "ps" and kind == "time":
        return value * PS * omega_a
    raise UsageError(f"{name}: unit '{unit}' is not a {kind}")


def _output_dir(arg: str | None) -> Path:
    path = Path(arg or os.environ.get(OUTPUT_ENV) or DEFAULT_OUTPUT)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _omega_a(args) -> float | None:
    if args.omega_a_thz is not None:
        if not args.omega_a_thz > 0:
            raise UsageError("--omega-a-thz must be positive")
        return args.omega_a_thz * THZ
    if args.isotope is not None:
        return _material(args).collective_frequency
    return None


def _material(args) -> MaterialParams:
    extra = load_isotope_file(args.isotope_file) if args.isotope_file else None
    if args.density is None:
        raise UsageError("--isotope needs --density (nuclei per cm^3)")
    return MaterialParams(lookup_isotope(args.isotope, extra), args.density)


def _add_medium_options(p):
    g = p.add_argument_group("medium (physical Omega_a)")
    g.add_argument("--omega-a-thz", type=float, help="collective frequency in 10^12 s^-1")
    g.add_argument("--isotope", help="isotope name from the database, e.g. K40")
    g.add_argument("--density", type=float, help="number density of resonant nuclei, cm^-3")
    g.add_argument("--isotope-file", help="extra isotope table: 'name energy_keV decay_rate' per line")


def _cmd_simulate(args) -> int:
    config = load_config(args.config, args.overrides)
    out = _output_dir(args.out)
    result = run_scenario(config)
    name = config.name or Path(args.config).stem
    csv_path = write_trajectory_csv(result, out / f"{name}.csv")
    yaml_path = out / f"{name}.scenario.yaml"
    dump_config(config, yaml_path)
    written = [csv_path, yaml_path]
    if "svg" in config.outputs and not args.no_svg:
        traj = result.trajectory
        curves = [("|Omega1|", result.times, traj.abs_omega1, "-"),
                  ("|Omega2|", result.times, traj.abs_omega2, "--")]
        xlabel = "t (ps)" if result.omega_a else "Omega_a t"
        written.append(write_figure_svg(curves, out / f"{name}.svg", title=name, xlabel=xlabel))
    traj = result.trajectory
    amp = abs(config.amplitude)
    t_peak, peak = first_peak(result.times, traj.abs_omega2 / amp)
    energy = traj.energy
    print(f"scenario          {name}")
    print(f"samples           {len(traj)}")
    print(f"first |Omega2| peak {peak:.6f} |A| at t = {t_peak:.6g} {result.time_unit}")
    print(f"max energy drift  {float(np.max(np.abs(energy - energy[0])) / energy[0]):.3e}")
    for path in written:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_analytic(args) -> int:
    omega_a = _omega_a(args)
    delta = _normalized(args.delta, omega_a, "frequency", "--delta")
    nu_d = _normalized(args.nu_d, omega_a, "frequency", "--nu-d") if args.nu_d else delta
    times = np.array([_normalized(t, omega_a, "time", "--times") for t in args.times])
    amplitude = complex(args.amplitude, 0.0)
    if args.kappa:
        w1, w2 = rwa_vibrating_solution(times, amplitude, delta, nu_d, args.kappa)
        t_tr = transfer_time_vibrating(args.kappa).exact
        label = "rwa"
    else:
        s = static_solution(times, amplitude, delta)
        w1, w2 = s.omega1, s.omega2
        t_tr = transfer_time_static(delta).exact
        label = "static"
    scale = 1.0 / omega_a / PS if omega_a else 1.0
    unit = "ps" if omega_a else "1/Omega_a"
    print(f"# {label} solution, transfer time {t_tr * scale:.6g} {unit}")
    print(f"t_{'ps' if omega_a else 'norm'},abs_omega1,abs_omega2")
    for t, a, b in zip(times, np.abs(np.atleast_1d(w1)), np.abs(np.atleast_1d(w2))):
        print(f"{t * scale:.17g},{a:.17g},{b:.17g}")
    if args.optimal:
        kappa, rate = optimal_kappa()
        print(f"# optimal kappa {kappa:.7f}, J1/sqrt2 {rate:.5f}")
    return EXIT_OK


def _cmd_design(args) -> int:
    if args.omega_a_thz is None and args.isotope is None:
        raise UsageError("design needs --omega-a-thz or --isotope/--density")
    source = args.omega_a_thz * THZ if args.omega_a_thz is not None else _material(args)
    report = design_switch(source, args.delta, args.kappa)
    print(report.to_json() if args.json else report.format_text())
    if args.out:
        path = _output_dir(args.out) / "design.json"
        path.write_text(report.to_json() + "\n", encoding="utf-8")
        if not args.json:
            print(f"wrote {path}")
    return EXIT_OK


def _cmd_reproduce(args) -> int:
    out = _output_dir(args.out)
    fig = reproduce_figure(args.figure, out, workers=args.workers)
    for key, value in fig.metrics.items():
        print(f"{key:<36s} {value:.8g}")
    (out / f"fig{args.figure}_metrics.json").write_text(json.dumps(fig.metrics, indent=2) + "\n",
                                                         encoding="utf-8")
    for path in fig.paths:
        print(f"wrote {path}")
    return EXIT_OK


def _cmd_sweep(args) -> int:
    base = load_config(args.config, args.overrides)
    if args.values:
        values = args.values
    else:
        start, stop, num = args.range
        if int(num) != num:
            raise UsageError("--range: the point count must be an integer")
        values = np.linspace(start, stop, int(num)).tolist()
    try:
        rows = sweep(args.parameter, values, base, workers=args.workers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = _output_dir(args.out)
    path = write_sweep_csv(rows, out / f"sweep_{args.parameter}.csv", args.parameter)
    print(f"{args.parameter:>12s} {'peak |Omega2|':>14s} {'t_peak':>12s}")
    for r in rows:
        print(f"{r.value:12.6g} {r.peak_abs_omega2:14.6f} {r.time_of_peak:12.6g}")
    best = max(rows, key=lambda r: r.peak_abs_omega2)
    print(f"maximum at {args.parameter} = {best.value:g}; full width at half maximum {half_width(rows):.4g}")
    print(f"wrote {path}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    suites = SUITES if "all" in args.suites else args.suites
    ok = True
    for suite in suites:
        report = validate(suite, workers=args.workers)
        if args.verbose:
            print(report.format_text())
        else:
            print(report.format_text().splitlines()[0])
            for c in report.failures():
                print(f"  FAIL {c.case}: {c.metric} = {c.value:.3e} (tol {c.tolerance:.1e})")
        ok &= report.passed
    return EXIT_OK if ok else EXIT_VALIDATION


def _cmd_materials(args) -> int:
    records = builtin_isotopes()
    if args.file:
        records += load_isotope_file(args.file)
    print(f"{'name':<8s} {'E (keV)':>9s} {'Gamma (s^-1)':>13s} {'lambda (m)':>12s}", end="")
    print(f" {'Omega_a (s^-1)':>15s}" if args.density else "")
    for r in records:
        line = f"{r.name:<8s} {r.transition_energy:9.4g} {r.gamma_decay_rate:13.4g} {r.wavelength:12.5g}"
        if args.density:
            line += f" {MaterialParams(r, args.density).collective_frequency:15.5g}"
        print(line)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gammaswitch", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="integrate a scenario file and write CSV (+SVG)")
    p.add_argument("config", help="YAML scenario file")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE",
                   help="override a scenario entry by dotted path, e.g. drive.kappa=0.14")
    p.add_argument("--out", help="output directory")
    p.add_argument("--no-svg", action="store_true", help="skip the plot even if the scenario asks for it")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("analytic", help="evaluate the closed-form solutions at given times")
    p.add_argument("--delta", type=_quantity, required=True, help="detuning (Omega_a units or NNthz)")
    p.add_argument("--kappa", type=float, default=0.0, help="modulation amplitude; 0 gives the static solution")
    p.add_argument("--nu-d", type=_quantity, help="drive frequency (default: resonant with --delta)")
    p.add_argument("--amplitude", type=float, default=1.0, help="incident amplitude A")
    p.add_argument("--times", type=_quantity, nargs="+", required=True,
                   help="evaluation times (1/Omega_a units or NNps)")
    p.add_argument("--optimal", action="store_true", help="also print the optimal modulation amplitude")
    _add_medium_options(p)
    p.set_defaults(func=_cmd_analytic)

    p = sub.add_parser("design", help="transfer times and crystal lengths of a switch")
    p.add_argument("--delta", type=float, required=True, help="detuning in units of Omega_a")
    p.add_argument("--kappa", type=float, required=True, help="modulation amplitude")
    p.add_argument("--json", action="store_true", help="print the report as JSON")
    p.add_argument("--out", help="also write design.json to this directory")
    _add_medium_options(p)
    p.set_defaults(func=_cmd_design)

    p = sub.add_parser("reproduce", help="regenerate the data behind a figure")
    p.add_argument("figure", choices=list(FIGURES))
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, default=None, help="parallel scenario runs")
    p.set_defaults(func=_cmd_reproduce)

    p = sub.add_parser("sweep", help="peak |Omega2| against one parameter")
    p.add_argument("config", help="base YAML scenario file")
    p.add_argument("--param", dest="parameter", choices=PARAMETERS, required=True)
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--values", type=float, nargs="+", help="explicit parameter values")
    g.add_argument("--range", type=float, nargs=3, metavar=("START", "STOP", "NUM"),
                   help="NUM evenly spaced values from START to STOP")
    p.add_argument("--set", dest="overrides", action="append", default=[], metavar="KEY=VALUE")
    p.add_argument("--out", help="output directory")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("validate", help="run invariant suites over the validation grid")
    p.add_argument("suites", nargs="+", choices=[*SUITES, "all"])
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("-v", "--verbose", action="store_true", help="list every case")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("materials", help="list the isotope database")
    p.add_argument("--file", help="extra isotope table to append")
    p.add_argument("--density", type=float, help="also show Omega_a at this density (cm^-3)")
    p.set_defaults(func=_cmd_materials)
    return parser


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except IntegrationError as exc:
        print(f"gammaswitch: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ConfigError, KeyError, ValueError, OSError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"gammaswitch: error: {msg}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
