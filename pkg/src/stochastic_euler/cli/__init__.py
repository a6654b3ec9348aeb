"""Configuration files, run orchestration and the ``solver`` command."""

from stochastic_euler.cli.app import app
from stochastic_euler.cli.config_io import format_config, parse_config, read_config
from stochastic_euler.cli.runner import compare_runs, execute, load_report, run, verify

__all__ = [
    "app",
    "compare_runs",
    "execute",
    "format_config",
    "load_report",
    "parse_config",
    "read_config",
    "run",
    "verify",
]
