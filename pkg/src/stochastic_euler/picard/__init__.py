"""Picard drivers, stopping times and checks on the iterates."""

from stochastic_euler.picard.diagnostics import (
    check_spde_residual,
    monitor_convergence,
    residual_form,
    verify_bounds,
)
from stochastic_euler.picard.initial import (
    density_blob,
    grid_for,
    initial_conditions,
    taylor_green,
)
from stochastic_euler.picard.regimes import (
    AdditiveRegime,
    MultiplicativeRegime,
    Regime,
    build_regime,
)
from stochastic_euler.picard.solver import (
    PicardSolver,
    default_radius,
    resolve_horizon,
    run_additive,
    run_multiplicative,
    run_regime,
)
from stochastic_euler.picard.state import IterationState
from stochastic_euler.picard.stopping import (
    first_crossing,
    stopping_time_additive,
    stopping_time_multiplicative,
)
from stochastic_euler.picard.uniqueness import uniqueness_harness

__all__ = [
    "AdditiveRegime",
    "IterationState",
    "MultiplicativeRegime",
    "PicardSolver",
    "Regime",
    "build_regime",
    "check_spde_residual",
    "default_radius",
    "density_blob",
    "first_crossing",
    "grid_for",
    "initial_conditions",
    "monitor_convergence",
    "residual_form",
    "resolve_horizon",
    "run_additive",
    "run_multiplicative",
    "run_regime",
    "stopping_time_additive",
    "stopping_time_multiplicative",
    "taylor_green",
    "uniqueness_harness",
    "verify_bounds",
]
