"""Exception classes for the stochastic Euler lab."""

from stochastic_euler.exceptions.base import (
    CharacteristicBlowupError,
    ConfigError,
    IncompatibleRHSError,
    LabError,
    NoConvergenceError,
    NonPositiveDensityError,
    ShapeMismatchError,
    SolverError,
    ValidationError,
)

__all__ = [
    "CharacteristicBlowupError",
    "ConfigError",
    "IncompatibleRHSError",
    "LabError",
    "NoConvergenceError",
    "NonPositiveDensityError",
    "ShapeMismatchError",
    "SolverError",
    "ValidationError",
]
