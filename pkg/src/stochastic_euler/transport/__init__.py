"""Semi-Lagrangian transport of densities and forced velocities."""

from stochastic_euler.transport.characteristics import (
    FlowMapSolve,
    advect_scalar,
    reverse_in_time,
    reversibility_error,
    solve_forced_velocity,
)
from stochastic_euler.transport.checks import (
    check_gradient_bound,
    check_max_principle,
    range_tolerance,
)

__all__ = [
    "FlowMapSolve",
    "advect_scalar",
    "check_gradient_bound",
    "check_max_principle",
    "range_tolerance",
    "reverse_in_time",
    "reversibility_error",
    "solve_forced_velocity",
]
