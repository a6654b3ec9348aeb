"""Scalar Brownian motion and its exponential change-of-variables factor."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import FloatArray
from stochastic_euler.noise.rng import counter_normals

# exp overflows float64 just above 709
EXP_GUARD = 700.0


def uniform_time_grid(t_run: float, n_steps: int) -> FloatArray:
    if n_steps < 1:
        raise ValidationError(f"n_steps must be >= 1, got {n_steps}")
    if not t_run > 0:
        raise ValidationError(f"T_run must be positive, got {t_run}")
    return np.arange(n_steps + 1, dtype=np.float64) * (t_run / n_steps)


def _frozen(a: FloatArray) -> FloatArray:
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class BrownianPath:
    """Sampled scalar Brownian motion W on a uniform time grid, W(0) = 0."""

    t_grid: FloatArray
    w: FloatArray
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "t_grid", _frozen(self.t_grid))
        object.__setattr__(self, "w", _frozen(self.w))
        if self.w.shape != self.t_grid.shape:
            raise ValidationError("w and t_grid must have the same length")
        if self.w[0] != 0.0:
            raise ValidationError("Brownian path must start at 0")

    @classmethod
    def zero(cls, t_run: float, n_steps: int, seed: int = 0) -> BrownianPath:
        t = uniform_time_grid(t_run, n_steps)
        return cls(t, np.zeros_like(t), seed)

    @property
    def n_steps(self) -> int:
        return int(self.t_grid.size - 1)

    @property
    def t_run(self) -> float:
        return float(self.t_grid[-1])

    @property
    def increments(self) -> FloatArray:
        return np.diff(self.w)

    def at(self, t: float | FloatArray) -> FloatArray:
        """Piecewise-linear interpolation between nodes."""
        return np.interp(t, self.t_grid, self.w)

    def coarsen(self, factor: int) -> BrownianPath:
        """The same path observed on every ``factor``-th node."""
        if factor < 1 or self.n_steps % factor:
            raise ValidationError(f"factor {factor} does not divide n_steps {self.n_steps}")
        return BrownianPath(self.t_grid[::factor], self.w[::factor], self.seed)

    def truncate(self, n_nodes: int) -> BrownianPath:
        return BrownianPath(self.t_grid[:n_nodes], self.w[:n_nodes], self.seed)


@dataclass(frozen=True, eq=False)
class ExpFactor:
    """z = exp(W) and z_inv = exp(-W) nodewise."""

    t_grid: FloatArray
    z: FloatArray
    z_inv: FloatArray

    def truncate(self, n_nodes: int) -> ExpFactor:
        return ExpFactor(self.t_grid[:n_nodes], self.z[:n_nodes], self.z_inv[:n_nodes])


def sample_brownian(t_run: float, n_steps: int, seed: int, stream: int = 0) -> BrownianPath:
    """W(t_{i+1}) = W(t_i) + sqrt(dt) xi_i with xi_i keyed by (seed, stream, i)."""
    t = uniform_time_grid(t_run, n_steps)
    xi = counter_normals(seed, stream, 0, n_steps)
    w = np.concatenate(([0.0], np.cumsum(np.sqrt(t_run / n_steps) * xi)))
    return BrownianPath(t, w, seed)


def exp_factor(path: BrownianPath) -> ExpFactor:
    peak = float(np.max(np.abs(path.w)))
    if peak > EXP_GUARD:
        raise ValidationError(f"|W| reaches {peak:.1f} > {EXP_GUARD}; exp would overflow")
    return ExpFactor(path.t_grid, _frozen(np.exp(path.w)), _frozen(np.exp(-path.w)))
