"""MCP tools wrapping runs, checks and stopping times."""

import asyncio
from pathlib import Path

from mcp.server.fastmcp import FastMCP

from stochastic_euler.cli.config_io import parse_config
from stochastic_euler.cli.runner import compare_runs, execute, verify
from stochastic_euler.config import Settings
from stochastic_euler.picard.initial import initial_conditions
from stochastic_euler.picard.regimes import build_regime
from stochastic_euler.picard.solver import default_radius, solenoidal_v0


def register_experiment_tools(mcp: FastMCP, settings: Settings) -> None:
    """Register experiment tools with the MCP server."""

    @mcp.tool()
    async def run_experiment(
        out_dir: str,
        config_text: str = "",
        overrides: dict[str, str] | None = None,
    ) -> dict:
        """Run one Picard experiment and write its run directory.

        Args:
            out_dir: Directory receiving run.json, norms.csv and the binary fields
            config_text: key=value configuration (empty for all defaults)
            overrides: Config keys replacing the values in config_text

        Returns:
            Exit status (0 converged, 2 no convergence) and the run report.
        """
        cfg = parse_config(config_text, overrides)
        report, status = await asyncio.to_thread(execute, cfg, Path(out_dir), settings)
        return {"exit_status": status, "report": report.model_dump(mode="json")}

    @mcp.tool()
    async def verify_run(run_dir: str) -> dict:
        """Re-run the bound and residual checks on a stored run.

        Args:
            run_dir: Run directory written by run_experiment or ``solver run``

        Returns:
            Bound reports, residuals and the overall verdict.
        """
        result = await asyncio.to_thread(verify, Path(run_dir))
        return result.model_dump(mode="json")

    @mcp.tool()
    async def compare_run_dirs(run_a: str, run_b: str) -> dict:
        """Sup-over-nodes L2 and W^{1,p} differences between two stored runs.

        Args:
            run_a: First run directory
            run_b: Second run directory on the same grids

        Returns:
            Per-field differences and their maximum.
        """
        result = await asyncio.to_thread(compare_runs, Path(run_a), Path(run_b))
        return result.model_dump(mode="json")

    @mcp.tool()
    async def stopping_time(config_text: str = "", A: float | None = None) -> dict:
        """Stopping time of the configured noise path without running the scheme.

        Args:
            config_text: key=value configuration (empty for all defaults)
            A: Ball radius (default: from the config, else 8 (1 + ||v0||_{2,p}))

        Returns:
            tau, its node, the interpolated crossing and the criterion trace.
        """
        cfg = parse_config(config_text)

        def evaluate() -> dict:
            regime = build_regime(cfg)
            radius = A if A is not None else cfg.A
            if radius is None:
                _, v0 = initial_conditions(cfg)
                radius = default_radius(solenoidal_v0(v0), cfg.p)
            result = regime.stopping_time(radius, cfg)
            return {"A": radius, **result.model_dump(mode="json")}

        return await asyncio.to_thread(evaluate)
