"""Initial data selected by RunConfig.initial_condition."""

from __future__ import annotations

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import GridSpec, ScalarField, VectorField
from stochastic_euler.fields.io import read_field
from stochastic_euler.models.config import RunConfig

RHO0_FILE = "rho0.bin"
V0_FILE = "v0.bin"


def grid_for(cfg: RunConfig) -> GridSpec:
    return GridSpec(dim=cfg.dim, n_per_axis=cfg.n_per_axis, length=cfg.length)


def _angles(grid: GridSpec) -> tuple[np.ndarray, ...]:
    scale = 2.0 * np.pi / grid.length
    return tuple(scale * x for x in grid.coordinates())


def taylor_green(grid: GridSpec, amplitude: float = 1.0) -> VectorField:
    """Steady Taylor-Green cell; in 3D the classical (sin cos cos, -cos sin cos, 0) field."""
    x = _angles(grid)
    if grid.dim == 2:
        comps = [np.sin(x[0]) * np.cos(x[1]), -np.cos(x[0]) * np.sin(x[1])]
    else:
        c = np.cos(x[2])
        comps = [
            np.sin(x[0]) * np.cos(x[1]) * c,
            -np.cos(x[0]) * np.sin(x[1]) * c,
            np.zeros(grid.shape),
        ]
    return VectorField(grid, amplitude * np.stack(comps))


def density_blob(grid: GridSpec, m: float, M: float, concentration: float) -> ScalarField:
    """Periodic bump m + (M - m) exp(kappa sum_i (cos(x_i - pi) - 1)), peak M at the centre."""
    x = _angles(grid)
    bump = np.exp(concentration * sum(np.cos(xi - np.pi) - 1.0 for xi in x))
    return ScalarField(grid, m + (M - m) * bump)


def initial_conditions(cfg: RunConfig) -> tuple[ScalarField, VectorField]:
    """(rho0, v0) for a run configuration."""
    grid = grid_for(cfg)
    if cfg.initial_condition == "taylor_green":
        return (
            ScalarField.constant(grid, cfg.density_min),
            taylor_green(grid, cfg.velocity_amplitude),
        )
    if cfg.initial_condition == "gaussian_density_blob":
        rho0 = density_blob(grid, cfg.density_min, cfg.density_max, cfg.blob_concentration)
        return rho0, taylor_green(grid, cfg.velocity_amplitude)

    assert cfg.initial_file is not None
    rho0 = read_field(cfg.initial_file / RHO0_FILE)
    v0 = read_field(cfg.initial_file / V0_FILE)
    if not isinstance(rho0, ScalarField) or not isinstance(v0, VectorField):
        raise ValidationError(f"{cfg.initial_file} must hold a scalar rho0 and a vector v0")
    if rho0.grid != grid or v0.grid != grid:
        raise ValidationError(f"initial fields in {cfg.initial_file} do not match the run grid")
    if float(rho0.values.min()) <= 0.0:
        raise ValidationError("initial density must be positive")
    return rho0, v0
