"""Pressure solves and Leray projection."""

from stochastic_euler.elliptic.pressure import (
    PressureSolution,
    assemble_pressure_rhs_additive,
    assemble_pressure_rhs_multiplicative,
    pressure_operator,
    pressure_rhs,
    solve_pressure,
)
from stochastic_euler.elliptic.projection import (
    LerayProjection,
    check_divergence_free,
    gradient_part,
    leray_project,
    project_series,
)

__all__ = [
    "LerayProjection",
    "PressureSolution",
    "assemble_pressure_rhs_additive",
    "assemble_pressure_rhs_multiplicative",
    "check_divergence_free",
    "gradient_part",
    "leray_project",
    "pressure_operator",
    "pressure_rhs",
    "project_series",
    "solve_pressure",
]
