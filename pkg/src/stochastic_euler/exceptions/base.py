"""Base exception classes for the stochastic Euler lab."""

from __future__ import annotations

from typing import Any

from mcp.server.fastmcp.exceptions import ToolError


class LabError(ToolError):
    """Base exception for all lab errors."""
    pass


class ValidationError(LabError, ValueError):
    """Invalid input parameters."""
    pass


class ConfigError(ValidationError):
    """Run configuration could not be parsed or validated."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class SolverError(LabError):
    """Numerical failure inside one of the sub-solvers."""

    def __init__(self, message: str):
        self.detail = message
        self.stage: str | None = None
        self.iteration: int | None = None
        super().__init__(message)

    def locate(self, stage: str, iteration: int) -> SolverError:
        """Record which Picard stage and iterate raised the error."""
        self.stage = stage
        self.iteration = iteration
        self.args = (f"[{stage}, k={iteration}] {self.detail}",)
        return self


class CharacteristicBlowupError(SolverError):
    """A characteristic left the finite range (invalid advecting field)."""
    pass


class NonPositiveDensityError(SolverError):
    """Density reached a non-positive value before the pressure solve."""

    def __init__(self, min_density: float):
        self.min_density = min_density
        super().__init__(f"density minimum {min_density:.6g} is not positive")


class IncompatibleRHSError(SolverError):
    """Pressure right-hand side does not have zero mean."""

    def __init__(self, mean: float, norm: float):
        self.mean = mean
        self.norm = norm
        super().__init__(f"right-hand side mean {mean:.3e} exceeds 1e-8 * {norm:.3e}")


class NoConvergenceError(SolverError):
    """An iteration hit its cap before reaching the tolerance."""

    def __init__(
        self,
        message: str,
        residual: float | None = None,
        history: list[float] | None = None,
        partial: Any = None,
    ):
        self.residual = residual
        self.history = history or []
        # (IterationState, SolveReport) of the last sweep when raised by the Picard loop
        self.partial = partial
        super().__init__(message)


class ShapeMismatchError(LabError):
    """Two runs cannot be compared because their grids differ."""
    pass
