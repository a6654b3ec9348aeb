"""Shared pytest fixtures for all tests."""

import numpy as np
import pytest

from stochastic_euler.config import Settings
from stochastic_euler.fields import GridSpec, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.models import RunConfig
from stochastic_euler.noise import uniform_time_grid
from stochastic_euler.picard import taylor_green


@pytest.fixture
def settings() -> Settings:
    """Test settings with a single worker thread."""
    return Settings(threads=1)


@pytest.fixture
def grid() -> GridSpec:
    """Small 2D periodic grid on [0, 2 pi)^2."""
    return GridSpec(dim=2, n_per_axis=16, length=2.0 * np.pi)


@pytest.fixture
def grid3() -> GridSpec:
    """Small 3D periodic grid."""
    return GridSpec(dim=3, n_per_axis=8, length=2.0 * np.pi)


@pytest.fixture
def tg(grid: GridSpec) -> VectorField:
    """Taylor-Green cell on the small grid."""
    return taylor_green(grid)


@pytest.fixture
def smooth_density(grid: GridSpec) -> ScalarField:
    """rho = 2 + cos x1, strictly positive and band-limited."""
    x, _ = grid.coordinates()
    return ScalarField(grid, 2.0 + np.cos(x))


@pytest.fixture
def t_grid() -> np.ndarray:
    return uniform_time_grid(0.1, 4)


@pytest.fixture
def still_flow(grid: GridSpec, t_grid: np.ndarray) -> TimeSeriesField:
    """Identically zero advecting field."""
    return TimeSeriesField.constant_in_time(t_grid, VectorField.zeros(grid))


@pytest.fixture
def tg_flow(tg: VectorField, t_grid: np.ndarray) -> TimeSeriesField:
    """Taylor-Green held constant in time."""
    return TimeSeriesField.constant_in_time(t_grid, tg)


@pytest.fixture
def small_config() -> RunConfig:
    """Cheap deterministic configuration: 16^2 grid, four time steps."""
    return RunConfig(n_per_axis=16, n_steps=4, t_horizon=0.02, k_max=12)
