"""Command-line surface: subcommands, exit codes and artifacts."""
import json

import pytest

from gammaswitch import cli
from gammaswitch.experiments import validation
from gammaswitch.experiments.figures import scenario_path
from gammaswitch.integrator import IntegrationError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_design_matches_switch_numbers(capsys):
    code, out, _ = run(capsys, "design", "--omega-a-thz", "0.8", "--delta", "250", "--kappa", "0.21")
    assert code == 0
    assert "490.9 ps" in out and "26.45 ps" in out and "14.72 cm" in out and "0.7928 cm" in out


def test_design_json_and_file(capsys, tmp_path):
    code, out, _ = run(capsys, "design", "--isotope", "K40", "--density", "8e21", "--delta", "250",
                       "--kappa", "1.841", "--json", "--out", str(tmp_path / "d"))
    assert code == 0
    data = json.loads(out)
    assert data["omega_a"] == pytest.approx(3.4487e11, rel=1e-4)
    assert json.loads((tmp_path / "d" / "design.json").read_text()) == data


@pytest.mark.parametrize("argv", [
    [], ["frobnicate"], ["reproduce", "6"], ["design", "--delta", "250", "--kappa", "0.2"],
    ["design", "--omega-a-thz", "0.8", "--delta", "250", "--kappa", "0"],
    ["design", "--isotope", "40K", "--delta", "250", "--kappa", "0.2"],
    ["analytic", "--delta", "250", "--times", "3ps"],
    ["analytic", "--delta", "3ps", "--times", "1", "--omega-a-thz", "1"],
    ["analytic", "--delta", "abc", "--times", "1"],
    ["sweep", "nonexistent.yaml", "--param", "kappa", "--values", "1", "2"],
])
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert err


def test_reproduce_creates_output_dir(capsys, tmp_path):
    out = tmp_path / "a" / "b"
    code, stdout, _ = run(capsys, "reproduce", "3a", "--out", str(out))
    assert code == 0
    assert {p.name for p in out.iterdir()} == {"fig3a.csv", "fig3a.svg", "fig3a_metrics.json"}
    assert "measured_frequency" in stdout


def test_reproduce_5_driven_transfer(capsys, tmp_path):
    code, out, _ = run(capsys, "reproduce", "5", "--out", str(tmp_path))
    assert code == 0
    metrics = json.loads((tmp_path / "fig5_metrics.json").read_text())
    assert metrics["driven_transfer_ps"] == pytest.approx(26.45, rel=0.05)
    assert (tmp_path / "fig5_driven.csv").read_text().startswith("t,abs_omega1")


def test_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_ENV, str(tmp_path / "env"))
    code, _, _ = run(capsys, "simulate", str(scenario_path("fig3a")))
    assert code == 0
    assert (tmp_path / "env" / "fig3a.csv").is_file()


def test_simulate_round_trip(capsys, tmp_path):
    first, second = tmp_path / "1", tmp_path / "2"
    code, out, _ = run(capsys, "simulate", str(scenario_path("fig4_kappa14")), "--set", "integration.t_end=10",
                       "--out", str(first))
    assert code == 0 and "wrote" in out
    assert (first / "fig4-kappa14.svg").is_file()
    code, _, _ = run(capsys, "simulate", str(first / "fig4-kappa14.scenario.yaml"), "--out", str(second))
    assert code == 0
    assert (first / "fig4-kappa14.csv").read_bytes() == (second / "fig4-kappa14.csv").read_bytes()


def test_simulate_override_precedence(capsys, tmp_path):
    run(capsys, "simulate", str(scenario_path("fig3a")), "--set", "detuning.delta=2", "--no-svg",
        "--out", str(tmp_path))
    text = (tmp_path / "fig3a.scenario.yaml").read_text()
    assert "delta1: 2.0" in text and "delta2: 2.0" in text
    assert not (tmp_path / "fig3a.svg").exists()


def test_simulate_bad_key_is_named(capsys, tmp_path):
    code, _, err = run(capsys, "simulate", str(scenario_path("fig3a")), "--set", "drive.kapa=1",
                       "--out", str(tmp_path))
    assert code == 1 and "drive.kapa" in err


def test_numerical_failure_exit_3(capsys, tmp_path, monkeypatch):
    def boom(config):
        raise IntegrationError(1.5)
    monkeypatch.setattr(cli, "run_scenario", boom)
    code, _, err = run(capsys, "simulate", str(scenario_path("fig3a")), "--out", str(tmp_path))
    assert code == 3 and "1.5" in err


def test_validate_conservation(capsys):
    code, out, _ = run(capsys, "validate", "conservation")
    assert code == 0
    drift = float(out.split("worst max relative energy drift = ")[1].split()[0])
    assert drift < 1e-8


def test_validate_failure_exit_2(capsys, monkeypatch):
    monkeypatch.setitem(validation.TOLERANCES, "rwa", 1e-9)
    code, out, _ = run(capsys, "validate", "rwa")
    assert code == 2
    assert "FAIL" in out and "kappa=0.21" in out


def test_analytic_physical_units(capsys):
    code, out, _ = run(capsys, "analytic", "--omega-a-thz", "0.8", "--delta", "200thz", "--times", "0ps", "491ps",
                       "--optimal")
    assert code == 0
    rows = [line.split(",") for line in out.splitlines() if line and line[0].isdigit()]
    assert float(rows[1][2]) == pytest.approx(1.0, abs=1e-3)
    assert "optimal kappa 1.841" in out


def test_analytic_rwa(capsys):
    code, out, _ = run(capsys, "analytic", "--delta", "250", "--kappa", "0.21", "--times", "0", "21.2")
    assert code == 0 and "rwa solution" in out


def test_materials(capsys, tmp_path):
    extra = tmp_path / "iso.txt"
    extra.write_text("57Fe 14.4 7.1e6\n")
    code, out, _ = run(capsys, "materials", "--file", str(extra), "--density", "8e21")
    assert code == 0
    assert "40K" in out and "127I" in out and "57Fe" in out and "3.4487e+11" in out


def test_sweep_cli(capsys, tmp_path):
    code, out, _ = run(capsys, "sweep", str(scenario_path("fig4_kappa21")), "--param", "nu_d",
                       "--range", "249.8", "250.2", "5", "--set", "integration.t_end=25", "--out", str(tmp_path))
    assert code == 0
    lines = (tmp_path / "sweep_nu_d.csv").read_text().splitlines()
    assert lines[0] == "nu_d,peak_abs_omega2,time_of_peak" and len(lines) == 6
    assert "maximum at nu_d = 250" in out


def test_version(capsys):
    with pytest.raises(SystemExit) as info:
        cli.main(["--version"])
    assert info.value.code == 0
    assert "0.1.0" in capsys.readouterr().out
