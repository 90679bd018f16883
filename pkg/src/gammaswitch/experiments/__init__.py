"""Scenario running, figure reproduction, validation suites, sweeps and switch design."""
from .config import ConfigError, Integration, Medium, ScenarioConfig, dump_config, load_config
from .design import SwitchDesignReport, design_switch
from .figures import FIGURES, FigureResult, load_scenario, reproduce_figure
from .runner import ScenarioResult, run_scenario
from .sweep import SweepRow, half_width, sweep
from .validation import SUITES, ValidationReport, validate

__all__ = [
    "ConfigError", "Integration", "Medium", "ScenarioConfig", "dump_config", "load_config",
    "SwitchDesignReport", "design_switch",
    "FIGURES", "FigureResult", "load_scenario", "reproduce_figure",
    "ScenarioResult", "run_scenario",
    "SweepRow", "half_width", "sweep",
    "SUITES", "ValidationReport", "validate",
]
