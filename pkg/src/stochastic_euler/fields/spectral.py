"""Pseudo-spectral differential operators on the periodic grid.

All transforms are real-to-complex over the trailing ``dim`` axes, so the same
helpers act on a scalar array (*shape) and on stacked arrays (..., *shape).
First-derivative symbols zero the Nyquist wavenumber; the Laplacian, the Poisson
inverse and the Leray projection are built from the same symbols, which makes
div(grad f) == laplacian(f) and div(P u) == 0 hold in the discrete sense.
"""

from __future__ import annotations

from functools import cache

import numpy as np
from scipy import fft

from stochastic_euler.fields.grid import FloatArray, GridSpec, ScalarField, VectorField

ComplexArray = np.ndarray


def _axes(grid: GridSpec) -> tuple[int, ...]:
    return tuple(range(-grid.dim, 0))


@cache
def integer_modes(grid: GridSpec) -> tuple[FloatArray, ...]:
    """Integer mode numbers m_i on the rfft layout, one broadcast array per axis."""
    n = grid.n_per_axis
    full = np.fft.fftfreq(n, d=1.0 / n)
    half = np.fft.rfftfreq(n, d=1.0 / n)
    axes = [full] * (grid.dim - 1) + [half]
    return tuple(np.meshgrid(*axes, indexing="ij", sparse=True))


@cache
def derivative_symbols(grid: GridSpec) -> tuple[FloatArray, ...]:
    """Wavenumbers k_i = 2 pi m_i / L with the Nyquist mode set to zero."""
    scale = 2.0 * np.pi / grid.length
    nyquist = grid.n_per_axis // 2
    out = []
    for m in integer_modes(grid):
        k = scale * np.where(np.abs(m) == nyquist, 0.0, m)
        k.setflags(write=False)
        out.append(k)
    return tuple(out)


@cache
def laplacian_symbol(grid: GridSpec) -> FloatArray:
    """|k|^2 built from the derivative symbols."""
    k2 = sum(k**2 for k in derivative_symbols(grid))
    k2 = np.asarray(k2, dtype=np.float64)
    k2.setflags(write=False)
    return k2


@cache
def inverse_laplacian_symbol(grid: GridSpec) -> FloatArray:
    """1/|k|^2 with the null modes (mean and Nyquist lines) mapped to zero."""
    k2 = laplacian_symbol(grid)
    inv = np.zeros_like(k2)
    np.divide(1.0, k2, out=inv, where=k2 > 0)
    inv.setflags(write=False)
    return inv


@cache
def dealias_mask(grid: GridSpec) -> FloatArray:
    """2/3-rule mask: keep |m_i| <= n // 3 on every axis."""
    cutoff = grid.n_per_axis // 3
    mask = np.ones((1,) * grid.dim, dtype=bool)
    for m in integer_modes(grid):
        mask = mask & (np.abs(m) <= cutoff)
    out = mask.astype(np.float64)
    out.setflags(write=False)
    return out


def forward(values: FloatArray, grid: GridSpec) -> ComplexArray:
    return fft.rfftn(values, axes=_axes(grid))


def inverse(coeffs: ComplexArray, grid: GridSpec) -> FloatArray:
    return fft.irfftn(coeffs, s=grid.shape, axes=_axes(grid))


def partial_array(values: FloatArray, grid: GridSpec, orders: tuple[int, ...]) -> FloatArray:
    """Mixed partial derivative D^m of a (possibly stacked) array."""
    if not any(orders):
        return np.array(values, dtype=np.float64)
    symbol: ComplexArray = np.ones((1,) * grid.dim, dtype=np.complex128)
    for k, order in zip(derivative_symbols(grid), orders):
        if order:
            symbol = symbol * (1j * k) ** order
    return inverse(symbol * forward(values, grid), grid)


def gradient_array(values: FloatArray, grid: GridSpec) -> FloatArray:
    """Spectral gradient of a scalar array, shape (dim, *shape)."""
    coeffs = forward(values, grid)
    return np.stack([inverse(1j * k * coeffs, grid) for k in derivative_symbols(grid)])


def jacobian_array(data: FloatArray, grid: GridSpec) -> FloatArray:
    """J[..., i, j] = d_j v^i for a (possibly stacked) vector array (..., dim, *shape)."""
    coeffs = forward(data, grid)
    axis = data.ndim - grid.dim
    return np.stack(
        [inverse(1j * k * coeffs, grid) for k in derivative_symbols(grid)], axis=axis
    )


def divergence_array(data: FloatArray, grid: GridSpec) -> FloatArray:
    coeffs = forward(data, grid)
    total = sum(1j * k * coeffs[i] for i, k in enumerate(derivative_symbols(grid)))
    return inverse(total, grid)


def dealias(values: FloatArray, grid: GridSpec) -> FloatArray:
    """Truncate the upper third of the modes."""
    return inverse(dealias_mask(grid) * forward(values, grid), grid)


def dealiased_product(a: FloatArray, b: FloatArray, grid: GridSpec) -> FloatArray:
    """Pointwise product with 2/3-rule truncation of both factors and the result."""
    return dealias(dealias(a, grid) * dealias(b, grid), grid)


def gradient(f: ScalarField) -> VectorField:
    """Spectral gradient, exact for band-limited fields."""
    return VectorField(f.grid, gradient_array(f.values, f.grid))


def divergence(v: VectorField) -> ScalarField:
    """Spectral divergence sum_i d_i v^i."""
    return ScalarField(v.grid, divergence_array(v.data, v.grid))


def laplacian(f: ScalarField) -> ScalarField:
    coeffs = forward(f.values, f.grid)
    return ScalarField(f.grid, inverse(-laplacian_symbol(f.grid) * coeffs, f.grid))


def inverse_laplacian(f: ScalarField) -> ScalarField:
    """Mean-zero solution phi of laplacian(phi) = f (null modes of f are discarded)."""
    coeffs = forward(f.values, f.grid)
    return ScalarField(f.grid, inverse(-inverse_laplacian_symbol(f.grid) * coeffs, f.grid))
