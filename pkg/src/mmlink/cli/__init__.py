"""Scenario-driven batch interface."""

from .emit import emit_csv, emit_plot
from .main import main, run, run_suite
from .scenario import ScenarioError, ScenarioFile, load_scenario, parse_scenario, serialize

__all__ = [
    "ScenarioError",
    "ScenarioFile",
    "emit_csv",
    "emit_plot",
    "load_scenario",
    "main",
    "parse_scenario",
    "run",
    "run_suite",
    "serialize",
]
