"""Command-line entry point: ``solver run``, ``solver verify``, ``solver compare``."""

from __future__ import annotations

from pathlib import Path
from typing import Annotated

import typer

from stochastic_euler.cli.config_io import parse_config
from stochastic_euler.cli.runner import EXIT_ERROR, EXIT_OK, compare_runs, run, verify
from stochastic_euler.config import configure_logging
from stochastic_euler.exceptions import ConfigError, LabError

app = typer.Typer(
    help="Picard construction of pathwise stochastic inhomogeneous Euler solutions.",
    no_args_is_help=True,
    add_completion=False,
)


def parse_overrides(args: list[str]) -> dict[str, str]:
    """``--key value`` and ``--key=value`` pairs left over after the known options."""
    overrides: dict[str, str] = {}
    i = 0
    while i < len(args):
        arg = args[i]
        if not arg.startswith("--"):
            raise ConfigError(f"unexpected argument {arg!r}")
        key = arg[2:]
        if "=" in key:
            key, value = key.split("=", 1)
        elif i + 1 < len(args):
            i += 1
            value = args[i]
        else:
            raise ConfigError(f"missing value for {arg}")
        overrides[key.replace("-", "_")] = value
        i += 1
    return overrides


def _fail(error: Exception) -> typer.Exit:
    typer.echo(f"error: {error}", err=True)
    return typer.Exit(EXIT_ERROR)


@app.callback()
def main(
    log_level: Annotated[
        str | None, typer.Option("--log-level", help="Overrides SOLVER_LOG_LEVEL")
    ] = None,
) -> None:
    configure_logging(log_level)


@app.command("run", context_settings={"allow_extra_args": True, "ignore_unknown_options": True})
def run_command(
    ctx: typer.Context,
    out: Annotated[Path, typer.Option("--out", help="Output directory")],
    config: Annotated[
        Path | None, typer.Option("--config", help="key=value configuration file")
    ] = None,
    seed: Annotated[int | None, typer.Option("--seed")] = None,
    regime: Annotated[str | None, typer.Option("--regime")] = None,
) -> None:
    """Run one experiment. Any further ``--key value`` overrides that config key."""
    try:
        overrides = parse_overrides(ctx.args)
        if seed is not None:
            overrides["seed"] = str(seed)
        if regime is not None:
            overrides["regime"] = regime
        text = config.read_text(encoding="utf-8") if config is not None else ""
        cfg = parse_config(text, overrides)
    except (LabError, OSError) as e:
        raise _fail(e) from None
    raise typer.Exit(run(cfg, out))


@app.command("verify")
def verify_command(
    report: Annotated[Path, typer.Option("--report", help="Run directory to check")],
) -> None:
    """Re-run all bound and residual checks on a stored run."""
    try:
        result = verify(report)
    except (LabError, OSError) as e:
        raise _fail(e) from None
    typer.echo(result.model_dump_json(indent=2))
    raise typer.Exit(EXIT_OK if result.passed else EXIT_ERROR)


@app.command("compare")
def compare_command(
    run_a: Annotated[Path, typer.Argument(help="First run directory")],
    run_b: Annotated[Path, typer.Argument(help="Second run directory")],
) -> None:
    """Sup-over-nodes differences between the stored fields of two runs."""
    try:
        result = compare_runs(run_a, run_b)
    except (LabError, OSError) as e:
        raise _fail(e) from None
    typer.echo(result.model_dump_json(indent=2))
