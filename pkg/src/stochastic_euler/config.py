"""Process-level settings for the solver."""

import logging
import os
import sys

from pydantic_settings import BaseSettings


class Settings(BaseSettings):
    """Application settings loaded from environment variables."""

    # parallelism (0 = one worker per CPU)
    threads: int = 0

    # logging
    log_level: str = "INFO"

    # reports
    report_format: str = "stochastic-euler-run/1"

    # tool server
    server_name: str = "Stochastic Euler Lab"

    model_config = {
        "env_prefix": "SOLVER_",
        "env_file": ".env",
        "env_file_encoding": "utf-8",
    }

    @property
    def worker_count(self) -> int:
        """Resolved number of worker threads."""
        if self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


def configure_logging(level: str | None = None) -> None:
    """Route module loggers to stderr at ``level`` (default Settings().log_level)."""
    logging.basicConfig(
        level=(level or Settings().log_level).upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )
