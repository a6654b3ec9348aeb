"""Flat key=value run configuration files.

One ``key = value`` pair per line, ``#`` starts a comment, keys are the
RunConfig field names. An empty value or ``none`` clears an optional key.
"""

from __future__ import annotations

import logging
from collections.abc import Mapping
from pathlib import Path

from pydantic import ValidationError as PydanticValidationError

from stochastic_euler.exceptions import ConfigError
from stochastic_euler.models.config import RunConfig

logger = logging.getLogger(__name__)

KNOWN_KEYS = frozenset(RunConfig.model_fields)
_OPTIONAL = frozenset(
    name for name, field in RunConfig.model_fields.items() if field.default is None
)


def _value(key: str, raw: str) -> str | None:
    if key in _OPTIONAL and raw.lower() in ("", "none"):
        return None
    return raw


def _collect(text: str) -> tuple[dict[str, str | None], dict[str, int]]:
    values: dict[str, str | None] = {}
    lines: dict[str, int] = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"expected key=value, got {line!r}", number)
        key, raw = (part.strip() for part in line.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}", number)
        if key in values:
            raise ConfigError(f"duplicate key {key!r} (first on line {lines[key]})", number)
        values[key] = _value(key, raw)
        lines[key] = number
    return values, lines


def parse_config(text: str, overrides: Mapping[str, str] | None = None) -> RunConfig:
    """Validated RunConfig from key=value text; ``overrides`` replace file values.

    Raises:
        ConfigError: on syntax errors, unknown keys or invalid values, with the
            offending line number when there is one
    """
    values, lines = _collect(text)
    for key, raw in (overrides or {}).items():
        key = key.replace("-", "_")
        if key not in KNOWN_KEYS:
            raise ConfigError(f"unknown key {key!r}")
        values[key] = _value(key, raw.strip())
        lines.pop(key, None)

    try:
        cfg = RunConfig.model_validate(values)
    except PydanticValidationError as e:
        error = e.errors()[0]
        loc = error["loc"]
        key = str(loc[0]) if loc else None
        where = f"{key}: " if key else ""
        raise ConfigError(f"{where}{error['msg']}", lines.get(key) if key else None) from None

    for warning in cfg.warnings:
        logger.warning("Configuration outside the existence theory: %s", warning)
    return cfg


def read_config(path: Path, overrides: Mapping[str, str] | None = None) -> RunConfig:
    return parse_config(Path(path).read_text(encoding="utf-8"), overrides)


def _format_value(value: object) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def format_config(cfg: RunConfig) -> str:
    """key=value text that parses back to an equal RunConfig."""
    lines = [
        f"{name} = {_format_value(value)}"
        for name, value in cfg.model_dump().items()
        if value is not None
    ]
    return "\n".join(lines) + "\n"
