"""Entry point for running the MCP server via python -m stochastic_euler."""

from stochastic_euler.server import main

if __name__ == "__main__":
    main()
