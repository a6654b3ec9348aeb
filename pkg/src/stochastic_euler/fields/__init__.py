"""Periodic grids, sampled fields, spectral operators and discrete norms."""

from stochastic_euler.fields.grid import (
    FloatArray,
    GridSpec,
    ScalarField,
    TimeSeriesField,
    VectorField,
)
from stochastic_euler.fields.interpolation import PeriodicSpline, interpolate
from stochastic_euler.fields.norms import (
    cumulative_trapezoid,
    l2_inner,
    l2_norm,
    lp_norm,
    series_norms,
    sobolev_norm,
    sup_norm,
)
from stochastic_euler.fields.spectral import (
    dealias,
    dealiased_product,
    divergence,
    gradient,
    inverse_laplacian,
    laplacian,
)

__all__ = [
    "FloatArray",
    "GridSpec",
    "PeriodicSpline",
    "ScalarField",
    "TimeSeriesField",
    "VectorField",
    "cumulative_trapezoid",
    "dealias",
    "dealiased_product",
    "divergence",
    "gradient",
    "interpolate",
    "inverse_laplacian",
    "l2_inner",
    "l2_norm",
    "laplacian",
    "lp_norm",
    "series_norms",
    "sobolev_norm",
    "sup_norm",
]
