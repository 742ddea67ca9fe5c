"""Command line front end: scenario files, fixtures and the verification suite."""

from .scenario import Scenario, ScenarioError, load_default, load_scenario, parse_scenario
from .suite import Verdict, run_verification_suite
from .report import emit_report

__all__ = ["Scenario", "ScenarioError", "Verdict", "emit_report", "load_default", "load_scenario",
           "parse_scenario", "run_verification_suite", "main"]


def main(argv=None) -> int:
    from .main import main as _main
    return _main(argv)
