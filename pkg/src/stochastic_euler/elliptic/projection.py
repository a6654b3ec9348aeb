"""Leray projection onto divergence-free fields."""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from stochastic_euler.fields.grid import FloatArray, GridSpec, TimeSeriesField, VectorField
from stochastic_euler.fields.spectral import (
    derivative_symbols,
    divergence_array,
    forward,
    inverse,
    inverse_laplacian_symbol,
)
from stochastic_euler.models.reports import DivergenceReport


class LerayProjection(NamedTuple):
    v: VectorField
    grad_phi: VectorField


def gradient_part(data: FloatArray, grid: GridSpec) -> FloatArray:
    """grad phi with laplacian(phi) = div u, for arrays (..., dim, *shape)."""
    coeffs = forward(data, grid)
    ks = derivative_symbols(grid)
    comp_axis = coeffs.ndim - grid.dim - 1
    div_hat = sum(1j * k * np.take(coeffs, i, axis=comp_axis) for i, k in enumerate(ks))
    phi_hat = -inverse_laplacian_symbol(grid) * div_hat
    return np.stack([inverse(1j * k * phi_hat, grid) for k in ks], axis=comp_axis)


def leray_project(u: VectorField) -> LerayProjection:
    """Split u = v + grad phi with div v = 0."""
    grad_phi = gradient_part(u.data, u.grid)
    return LerayProjection(VectorField(u.grid, u.data - grad_phi), VectorField(u.grid, grad_phi))


def project_series(u: TimeSeriesField) -> tuple[TimeSeriesField, TimeSeriesField]:
    """Leray projection of every frame; returns (v, grad_phi) series."""
    grad_phi = gradient_part(u.data, u.grid)
    return (
        TimeSeriesField(u.grid, u.t_grid, u.data - grad_phi, "vector"),
        TimeSeriesField(u.grid, u.t_grid, grad_phi, "vector"),
    )


def check_divergence_free(series: TimeSeriesField, tol: float = 1e-10) -> DivergenceReport:
    """sup|div v(t)| <= tol (1 + sup|v(t)|) at every node."""
    grid = series.grid
    divs = []
    ratios = []
    for n in range(series.n_nodes):
        frame = series.data[n]
        div = float(np.max(np.abs(divergence_array(frame, grid)), initial=0.0))
        divs.append(div)
        ratios.append(div / (1.0 + float(np.max(np.abs(frame), initial=0.0))))
    worst = max(ratios, default=0.0)
    return DivergenceReport(
        max_divergence=divs, tol=tol, worst_ratio=worst, passed=worst <= tol
    )
