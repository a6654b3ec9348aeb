"""Integration tests for the MCP server."""
