"""Tests for experiment MCP tools."""

import pytest
from mcp.server.fastmcp import FastMCP

from stochastic_euler.config import Settings
from stochastic_euler.exceptions import ConfigError
from stochastic_euler.tools.experiments import register_experiment_tools

SMALL = "n_per_axis = 16\nn_steps = 4\nt_horizon = 0.02\n"


@pytest.fixture
def mcp_with_tools():
    """Create FastMCP instance with experiment tools registered."""
    mcp = FastMCP("test-solver")
    register_experiment_tools(mcp, Settings(threads=1))
    return mcp


def tool(mcp: FastMCP, name: str):
    return mcp._tool_manager._tools[name].fn


class TestRunExperiment:
    """Tests for run_experiment tool."""

    async def test_converged_run(self, mcp_with_tools, tmp_path):
        result = await tool(mcp_with_tools, "run_experiment")(
            out_dir=str(tmp_path), config_text=SMALL
        )

        assert result["exit_status"] == 0
        assert result["report"]["solve"]["converged"] is True
        assert (tmp_path / "run.json").exists()

    async def test_overrides(self, mcp_with_tools, tmp_path):
        result = await tool(mcp_with_tools, "run_experiment")(
            out_dir=str(tmp_path), config_text=SMALL, overrides={"k_max": "1"}
        )

        assert result["exit_status"] == 2
        assert result["report"]["solve"]["iterations"] == 1

    async def test_bad_config(self, mcp_with_tools, tmp_path):
        with pytest.raises(ConfigError, match="line 1"):
            await tool(mcp_with_tools, "run_experiment")(
                out_dir=str(tmp_path), config_text="n_per_axis = 12"
            )


class TestStoredRuns:
    """Tests for verify_run and compare_run_dirs tools."""

    async def test_verify_and_compare(self, mcp_with_tools, tmp_path):
        run = tool(mcp_with_tools, "run_experiment")
        await run(out_dir=str(tmp_path / "a"), config_text=SMALL)
        await run(out_dir=str(tmp_path / "b"), config_text=SMALL)

        verified = await tool(mcp_with_tools, "verify_run")(run_dir=str(tmp_path / "a"))
        compared = await tool(mcp_with_tools, "compare_run_dirs")(
            run_a=str(tmp_path / "a"), run_b=str(tmp_path / "b")
        )

        assert verified["passed"] is True
        assert compared["max_l2"] == 0.0


class TestStoppingTime:
    """Tests for stopping_time tool."""

    async def test_declared_radius(self, mcp_with_tools):
        result = await tool(mcp_with_tools, "stopping_time")(
            config_text="n_per_axis = 16\nn_steps = 8\nt_horizon = 1.0", A=2.0
        )

        assert result["A"] == 2.0
        assert result["tau"] == 0.25
        assert result["capped"] is False

    async def test_default_radius(self, mcp_with_tools):
        result = await tool(mcp_with_tools, "stopping_time")(config_text=SMALL)

        assert result["A"] > 8.0
        assert len(result["criterion_trace"]) == 5

    async def test_additive(self, mcp_with_tools):
        result = await tool(mcp_with_tools, "stopping_time")(
            config_text=SMALL + "regime = additive\nq_modes = 4\n", A=50.0
        )

        assert result["tau_node"] >= 1
