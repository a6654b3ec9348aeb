"""Integration tests for the MCP server."""

import pytest
from mcp.server.fastmcp import FastMCP

from stochastic_euler.config import Settings
from stochastic_euler.tools import register_all_tools

# expected tool names
EXPECTED_TOOLS = [
    "run_experiment",
    "verify_run",
    "compare_run_dirs",
    "stopping_time",
]


class TestServerToolRegistration:
    """Tests for tool registration on server startup."""

    @pytest.fixture
    def mcp_server(self):
        """Create an MCP server with all tools registered."""
        mcp = FastMCP("test-solver-server")
        register_all_tools(mcp, Settings(threads=1))
        return mcp

    def test_all_tools_registered(self, mcp_server):
        """Verify all expected tools are registered."""
        registered_tools = set(mcp_server._tool_manager._tools.keys())

        assert registered_tools == set(EXPECTED_TOOLS)

    def test_tools_have_descriptions(self, mcp_server):
        for name in EXPECTED_TOOLS:
            assert mcp_server._tool_manager._tools[name].description

    async def test_list_tools(self, mcp_server):
        tools = await mcp_server.list_tools()

        assert {t.name for t in tools} == set(EXPECTED_TOOLS)

    async def test_call_stopping_time(self, mcp_server):
        """End-to-end call through the server's tool dispatch."""
        config_text = "n_per_axis = 16\nn_steps = 8\nt_horizon = 1.0"

        result = await mcp_server.call_tool("stopping_time", {"config_text": config_text, "A": 2.0})

        assert result


class TestServerModule:
    """Tests for the server entry module."""

    def test_server_instance(self):
        from stochastic_euler.server import mcp

        assert isinstance(mcp, FastMCP)
        assert "stopping_time" in mcp._tool_manager._tools
