"""Noise regimes of the Picard scheme.

Both regimes share one sweep; they differ in how the previous iterate advects,
how it enters the pressure right-hand side and the forcing, and in what the
projection step adds back. With z = exp(W) (multiplicative) the iterate is the
transformed field v~ = z v; in the additive regime z = 1 and W^Q enters the
forcing and the projected field.
"""

from __future__ import annotations

import logging
from abc import ABC, abstractmethod

import numpy as np

from stochastic_euler.elliptic.pressure import pressure_rhs
from stochastic_euler.elliptic.projection import project_series
from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import (
    FloatArray,
    GridSpec,
    ScalarField,
    TimeSeriesField,
    VectorField,
)
from stochastic_euler.fields.spectral import dealiased_product, jacobian_array
from stochastic_euler.models.config import RunConfig
from stochastic_euler.models.reports import StoppingTimeResult
from stochastic_euler.noise.brownian import BrownianPath, ExpFactor, exp_factor, sample_brownian
from stochastic_euler.noise.q_wiener import (
    QWienerPath,
    k2_surrogate,
    sample_q_wiener,
    zero_q_wiener,
)
from stochastic_euler.picard.stopping import stopping_time_additive, stopping_time_multiplicative

logger = logging.getLogger(__name__)


def _scaled(series: TimeSeriesField, factors: FloatArray) -> TimeSeriesField:
    shape = (-1,) + (1,) * (series.data.ndim - 1)
    return TimeSeriesField(
        series.grid, series.t_grid, factors.reshape(shape) * series.data, series.kind
    )


class Regime(ABC):
    """Regime-specific pieces of one Picard sweep."""

    name: str

    def __init__(self, grid: GridSpec, t_grid: FloatArray):
        self.grid = grid
        self.t_grid = np.asarray(t_grid, dtype=np.float64)

    @property
    def n_nodes(self) -> int:
        return int(self.t_grid.size)

    @property
    @abstractmethod
    def z(self) -> FloatArray:
        """Per-node factor multiplying the pressure forcing."""
        pass

    @property
    @abstractmethod
    def z_inv(self) -> FloatArray:
        """Per-node factor multiplying the advecting iterate."""
        pass

    @property
    @abstractmethod
    def noise_path(self) -> BrownianPath | QWienerPath:
        """The sampled path driving this regime."""
        pass

    @abstractmethod
    def noise_field(self) -> TimeSeriesField | None:
        """Field added back after projection (None when there is none)."""
        pass

    @abstractmethod
    def stopping_time(self, A: float, cfg: RunConfig) -> StoppingTimeResult:
        pass

    @abstractmethod
    def truncate(self, n_nodes: int) -> Regime:
        """The same regime restricted to the first ``n_nodes`` time nodes."""
        pass

    def advecting_field(self, v: TimeSeriesField) -> TimeSeriesField:
        return _scaled(v, self.z_inv)

    def pressure_rhs(self, v: VectorField, n: int) -> tuple[ScalarField, float]:
        return pressure_rhs(v, float(self.z_inv[n] ** 2))

    def noise_forcing(self, v: TimeSeriesField) -> FloatArray | None:
        """Extra forcing beyond the pressure term, shape of ``v.data``."""
        return None

    def forcing(
        self, grad_pi: TimeSeriesField, rho: TimeSeriesField, v: TimeSeriesField
    ) -> TimeSeriesField:
        """-z grad pi / rho plus the regime's noise forcing."""
        shape = (-1,) + (1,) * (grad_pi.data.ndim - 1)
        data = -self.z.reshape(shape) * grad_pi.data / rho.data[:, np.newaxis]
        extra = self.noise_forcing(v)
        if extra is not None:
            data = data + extra
        return TimeSeriesField(self.grid, self.t_grid, data, "vector")

    def project(self, u: TimeSeriesField) -> tuple[TimeSeriesField, TimeSeriesField]:
        """(projected iterate, grad phi); the noise field passes through unchanged."""
        v, grad_phi = project_series(u)
        noise = self.noise_field()
        if noise is not None:
            v = TimeSeriesField(self.grid, self.t_grid, v.data + noise.data, "vector")
        return v, grad_phi

    def physical_velocity(self, v: TimeSeriesField) -> TimeSeriesField:
        """The velocity of the original equations reconstructed from the iterate."""
        return _scaled(v, self.z_inv)


class MultiplicativeRegime(Regime):
    """dv + (v . grad) v dt + grad pi / rho dt = -v o dW through v~ = exp(W) v."""

    name = "multiplicative"

    def __init__(self, grid: GridSpec, path: BrownianPath, name: str = "multiplicative"):
        super().__init__(grid, path.t_grid)
        self.name = name
        self.path = path
        self.factor: ExpFactor = exp_factor(path)

    @property
    def noise_path(self) -> BrownianPath:
        return self.path

    @property
    def z(self) -> FloatArray:
        return self.factor.z

    @property
    def z_inv(self) -> FloatArray:
        return self.factor.z_inv

    def noise_field(self) -> TimeSeriesField | None:
        return None

    def stopping_time(self, A: float, cfg: RunConfig) -> StoppingTimeResult:
        return stopping_time_multiplicative(self.factor, A)

    def truncate(self, n_nodes: int) -> MultiplicativeRegime:
        return MultiplicativeRegime(self.grid, self.path.truncate(n_nodes), self.name)


class AdditiveRegime(Regime):
    """dv + (v . grad) v dt + grad pi / rho dt = dW^Q with u = v - W^Q."""

    name = "additive"

    def __init__(self, qpath: QWienerPath):
        super().__init__(qpath.grid, qpath.t_grid)
        self.qpath = qpath
        self._ones = np.ones(self.n_nodes)
        self._noise_jacobian: FloatArray | None = None

    @property
    def noise_path(self) -> QWienerPath:
        return self.qpath

    @property
    def z(self) -> FloatArray:
        return self._ones

    @property
    def z_inv(self) -> FloatArray:
        return self._ones

    def noise_field(self) -> TimeSeriesField | None:
        if self.qpath.frames.is_zero:
            return None
        return self.qpath.frames

    def noise_forcing(self, v: TimeSeriesField) -> FloatArray | None:
        """-(v . grad) W^Q per node with dealiased products."""
        if self.qpath.frames.is_zero or v.is_zero:
            return None
        if self._noise_jacobian is None:
            self._noise_jacobian = jacobian_array(self.qpath.frames.data, self.grid)
        jac = self._noise_jacobian  # (N_t + 1, i, j, *shape) = d_j W^i
        out = np.zeros_like(v.data)
        dim = self.grid.dim
        for n in range(self.n_nodes):
            for i in range(dim):
                for j in range(dim):
                    out[n, i] -= dealiased_product(v.data[n, j], jac[n, i, j], self.grid)
        return out

    def stopping_time(self, A: float, cfg: RunConfig) -> StoppingTimeResult:
        norms = k2_surrogate(self.qpath)
        return stopping_time_additive(norms, self.t_grid, A, cfg.c1, cfg.c2, cfg.c3)

    def truncate(self, n_nodes: int) -> AdditiveRegime:
        return AdditiveRegime(self.qpath.truncate(n_nodes))


def build_regime(cfg: RunConfig, path: BrownianPath | QWienerPath | None = None) -> Regime:
    """The regime selected by ``cfg`` with noise regenerated from its seed unless given.

    The deterministic regime is the multiplicative one driven by W = 0;
    ``zero_noise`` keeps the chosen regime but zeroes its path.
    """
    grid = GridSpec(dim=cfg.dim, n_per_axis=cfg.n_per_axis, length=cfg.length)
    if cfg.regime == "additive":
        if path is None:
            if cfg.zero_noise:
                path = zero_q_wiener(grid, cfg.q_spec, cfg.t_horizon, cfg.n_steps)
            else:
                path = sample_q_wiener(grid, cfg.q_spec, cfg.t_horizon, cfg.n_steps, cfg.seed)
        if not isinstance(path, QWienerPath):
            raise ValidationError("the additive regime is driven by a Q-Wiener path")
        return AdditiveRegime(path)

    if path is None:
        if cfg.regime == "deterministic" or cfg.zero_noise:
            path = BrownianPath.zero(cfg.t_horizon, cfg.n_steps, cfg.seed)
        else:
            path = sample_brownian(cfg.t_horizon, cfg.n_steps, cfg.seed)
    if not isinstance(path, BrownianPath):
        raise ValidationError(f"the {cfg.regime} regime is driven by a scalar Brownian path")
    logger.debug("Built %s regime on %d nodes", cfg.regime, path.t_grid.size)
    return MultiplicativeRegime(grid, path, cfg.regime)
