"""Divergence-free trace-class Q-Wiener noise on the periodic grid.

The eigenbasis is built from real trigonometric fields e(x) = a * cos(kappa . x)
and e(x) = a * sin(kappa . x), where the wavevector kappa runs over one half of
the dealiased integer lattice and the amplitude a is a unit vector orthogonal to
kappa. Every basis field is therefore divergence-free. Modes are ordered by
|kappa|, then lexicographically, then by polarization and phase; mode j (from 1)
carries eigenvalue c j^(-s) and is driven by Brownian stream j.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import cache
from itertools import product
from typing import NamedTuple

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import FloatArray, GridSpec, TimeSeriesField
from stochastic_euler.fields.norms import multi_indices, sobolev_norm
from stochastic_euler.fields.spectral import partial_array
from stochastic_euler.models.config import QWienerSpec
from stochastic_euler.noise.brownian import sample_brownian, uniform_time_grid

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class BasisMode:
    """One divergence-free trigonometric basis field."""

    wavevector: tuple[int, ...]
    polarization: tuple[float, ...]
    phase: str  # "cos" or "sin"


def _canonical(m: tuple[int, ...]) -> bool:
    # first nonzero component positive: one representative of +-m
    for c in m:
        if c != 0:
            return c > 0
    return False


def _polarizations(m: tuple[int, ...]) -> list[tuple[float, ...]]:
    k = np.array(m, dtype=np.float64)
    k_hat = k / np.linalg.norm(k)
    if k.size == 2:
        return [(-float(k_hat[1]), float(k_hat[0]))]
    # cross with the coordinate axis least aligned with kappa
    axis = np.zeros(3)
    axis[int(np.argmin(np.abs(k_hat)))] = 1.0
    e1 = np.cross(k_hat, axis)
    e1 /= np.linalg.norm(e1)
    e2 = np.cross(k_hat, e1)
    return [tuple(float(c) for c in e1), tuple(float(c) for c in e2)]


@cache
def basis_modes(grid: GridSpec) -> tuple[BasisMode, ...]:
    """Every divergence-free basis field inside the dealiased mode budget."""
    cutoff = grid.n_per_axis // 3
    lattice = [
        m
        for m in product(range(-cutoff, cutoff + 1), repeat=grid.dim)
        if _canonical(m)
    ]
    lattice.sort(key=lambda m: (sum(c * c for c in m), m))
    modes = []
    for m in lattice:
        for e in _polarizations(m):
            modes.append(BasisMode(m, e, "cos"))
            modes.append(BasisMode(m, e, "sin"))
    return tuple(modes)


def mode_budget(grid: GridSpec) -> int:
    return len(basis_modes(grid))


def basis_field(grid: GridSpec, mode: BasisMode) -> FloatArray:
    """Samples of one basis field, shape (dim, *grid.shape)."""
    x = grid.coordinates()
    scale = 2.0 * np.pi / grid.length
    phase = sum(scale * m * xi for m, xi in zip(mode.wavevector, x))
    wave = np.cos(phase) if mode.phase == "cos" else np.sin(phase)
    return np.stack([a * wave for a in mode.polarization])


def eigenvalues(spec: QWienerSpec) -> FloatArray:
    """lambda_j = c j^(-s), j = 1..M, with c the variance scale."""
    j = np.arange(1, spec.mode_count + 1, dtype=np.float64)
    return spec.variance_scale * j ** (-spec.decay_exponent)


@dataclass(frozen=True, eq=False)
class QWienerPath:
    """Sampled W^Q(t) = sum_j sqrt(lambda_j) beta_j(t) e_j on a uniform time grid."""

    frames: TimeSeriesField
    coefficients: FloatArray  # beta_j(t_n), shape (M, N_t + 1)
    eigenvalues: FloatArray
    modes: tuple[BasisMode, ...]
    spec: QWienerSpec
    seed: int

    @property
    def grid(self) -> GridSpec:
        return self.frames.grid

    @property
    def t_grid(self) -> FloatArray:
        return self.frames.t_grid

    @property
    def wavevectors(self) -> FloatArray:
        """Physical wavevectors kappa_j = 2 pi m_j / L, shape (M, dim)."""
        m = np.array([mode.wavevector for mode in self.modes], dtype=np.float64)
        return (2.0 * np.pi / self.grid.length) * m

    def truncate(self, n_nodes: int) -> QWienerPath:
        return QWienerPath(
            self.frames.truncate(n_nodes),
            self.coefficients[:, :n_nodes],
            self.eigenvalues,
            self.modes,
            self.spec,
            self.seed,
        )


def _assemble(
    grid: GridSpec,
    spec: QWienerSpec,
    t_grid: FloatArray,
    coefficients: FloatArray,
    seed: int,
) -> QWienerPath:
    budget = mode_budget(grid)
    if spec.mode_count > budget:
        raise ValidationError(
            f"mode_count {spec.mode_count} exceeds the dealiased budget {budget} "
            f"of a {grid.n_per_axis}^{grid.dim} grid"
        )
    modes = basis_modes(grid)[: spec.mode_count]
    lam = eigenvalues(spec)
    basis = np.stack([basis_field(grid, mode) for mode in modes])
    weighted = np.sqrt(lam)[:, np.newaxis] * coefficients
    data = np.tensordot(weighted.T, basis, axes=1)
    frames = TimeSeriesField(grid, t_grid, data, "vector")
    return QWienerPath(frames, coefficients, lam, modes, spec, seed)


def sample_q_wiener(
    grid: GridSpec, spec: QWienerSpec, t_run: float, n_steps: int, seed: int
) -> QWienerPath:
    """Sample W^Q with independent beta_j drawn from streams 1..M of ``seed``."""
    t_grid = uniform_time_grid(t_run, n_steps)
    streams = range(1, spec.mode_count + 1)
    coefficients = np.stack([sample_brownian(t_run, n_steps, seed, stream=j).w for j in streams])
    logger.debug("Sampled %d Q-Wiener modes on %d nodes", spec.mode_count, n_steps + 1)
    return _assemble(grid, spec, t_grid, coefficients, seed)


def zero_q_wiener(grid: GridSpec, spec: QWienerSpec, t_run: float, n_steps: int) -> QWienerPath:
    """W^Q identically zero with the same basis bookkeeping."""
    t_grid = uniform_time_grid(t_run, n_steps)
    return _assemble(grid, spec, t_grid, np.zeros((spec.mode_count, n_steps + 1)), 0)


class QWienerNorms(NamedTuple):
    """Per-node monitored norms of a Q-Wiener path."""

    k2: FloatArray
    c2: FloatArray
    w2p: FloatArray


def k2_surrogate(path: QWienerPath) -> FloatArray:
    """(sum_j lambda_j (1 + |kappa_j|^2)^k beta_j(t)^2)^(1/2) per node."""
    kappa_sq = np.sum(path.wavevectors**2, axis=1)
    weight = path.eigenvalues * (1.0 + kappa_sq) ** path.spec.smoothness_k
    return np.sqrt(weight @ path.coefficients**2)


def c2_norm(data: FloatArray, grid: GridSpec) -> float:
    """Discrete C^2 norm: sum over |m| <= 2 of the grid maximum of |D^m f|."""
    total = 0.0
    for order in range(3):
        for m in multi_indices(grid.dim, order):
            total += float(np.max(np.abs(partial_array(data, grid, m)), initial=0.0))
    return total


def q_wiener_norms(path: QWienerPath, p: float) -> QWienerNorms:
    frames = path.frames
    c2 = np.array([c2_norm(frames.data[n], path.grid) for n in range(frames.n_nodes)])
    w2p = np.array([sobolev_norm(frames.vector_frame(n), 2, p) for n in range(frames.n_nodes)])
    return QWienerNorms(k2_surrogate(path), c2, w2p)
