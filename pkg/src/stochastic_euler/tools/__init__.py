"""MCP tools for the stochastic Euler lab.

This module provides functions to register all MCP tools with a FastMCP server.
"""

from mcp.server.fastmcp import FastMCP

from stochastic_euler.config import Settings

from .experiments import register_experiment_tools


def register_all_tools(mcp: FastMCP, settings: Settings) -> None:
    """Register all MCP tools with the server.

    Args:
        mcp: FastMCP server instance
        settings: Process settings (worker threads, report format)
    """
    register_experiment_tools(mcp, settings)


__all__ = ["register_all_tools"]
