"""FastMCP server exposing the experiment tools."""

import logging

from mcp.server.fastmcp import FastMCP

from stochastic_euler.config import Settings, configure_logging
from stochastic_euler.tools import register_all_tools

logger = logging.getLogger(__name__)

settings = Settings()

mcp = FastMCP(name=settings.server_name)
register_all_tools(mcp, settings)


def main() -> None:
    configure_logging(settings.log_level)
    logger.info("Starting %s with %d worker threads", settings.server_name, settings.worker_count)
    mcp.run()
