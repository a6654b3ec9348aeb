"""Discrete Lebesgue/Sobolev norms with equal-weight periodic quadrature."""

from __future__ import annotations

from functools import cache
from itertools import combinations_with_replacement

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import (
    FloatArray,
    GridSpec,
    ScalarField,
    TimeSeriesField,
    VectorField,
)
from stochastic_euler.fields.spectral import partial_array
from stochastic_euler.models.common import ValidExponent

Field = ScalarField | VectorField


@cache
def multi_indices(dim: int, order: int) -> tuple[tuple[int, ...], ...]:
    """All multi-indices m with |m| == order, each listed once."""
    out = []
    for axes in combinations_with_replacement(range(dim), order):
        m = [0] * dim
        for a in axes:
            m[a] += 1
        out.append(tuple(m))
    return tuple(out)


def _components(f: Field) -> FloatArray:
    if isinstance(f, VectorField):
        return f.data
    return f.values[np.newaxis]


def lp_norm_array(values: FloatArray, grid: GridSpec, p: float) -> float:
    """(sum |f|^p dV)^(1/p) over the trailing grid axes of one array."""
    a = np.abs(values)
    peak = float(a.max(initial=0.0))
    if peak == 0.0:
        return 0.0
    # scale by the peak so large p does not overflow
    total = float(np.sum((a / peak) ** p)) * grid.cell_volume
    return peak * total ** (1.0 / p)


def lp_norm(f: Field, p: float) -> float:
    """L^p norm; vector fields sum their component norms."""
    ValidExponent.validate(p)
    return sum(lp_norm_array(c, f.grid, p) for c in _components(f))


def sobolev_norm(f: Field, k: int, p: float) -> float:
    """||f||_{k,p} = sum over |m| <= k of ||D^m f||_{L^p}."""
    ValidExponent.validate(p)
    if k not in (0, 1, 2):
        raise ValidationError(f"Sobolev order k={k} must be 0, 1 or 2")
    grid = f.grid
    total = 0.0
    for c in _components(f):
        for order in range(k + 1):
            for m in multi_indices(grid.dim, order):
                total += lp_norm_array(partial_array(c, grid, m), grid, p)
    return total


def sup_norm(f: Field) -> float:
    """Maximum of |values| over grid points and components."""
    return float(np.max(np.abs(_components(f)), initial=0.0))


def l2_inner(a: Field, b: Field) -> float:
    """Discrete L^2 inner product with the volume weight."""
    return float(np.sum(_components(a) * _components(b))) * a.grid.cell_volume


def l2_norm(f: Field) -> float:
    return float(np.sqrt(max(l2_inner(f, f), 0.0)))


def series_norms(series: TimeSeriesField, k: int, p: float) -> FloatArray:
    """sobolev_norm of every frame of a time series."""
    return np.array([sobolev_norm(series.frame(n), k, p) for n in range(series.n_nodes)])


def series_l2(series: TimeSeriesField) -> FloatArray:
    return np.array([l2_norm(series.frame(n)) for n in range(series.n_nodes)])


def cumulative_trapezoid(values: FloatArray, t_grid: FloatArray) -> FloatArray:
    """Running trapezoid integral over time nodes (axis 0), starting at 0."""
    values = np.asarray(values, dtype=np.float64)
    out = np.zeros_like(values)
    if values.shape[0] > 1:
        dt = np.diff(t_grid).reshape((-1,) + (1,) * (values.ndim - 1))
        out[1:] = np.cumsum(0.5 * dt * (values[1:] + values[:-1]), axis=0)
    return out
