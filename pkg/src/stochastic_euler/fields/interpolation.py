"""Periodic spline interpolation of gridded fields."""

from __future__ import annotations

import numpy as np
from scipy import ndimage

from stochastic_euler.fields.grid import FloatArray, GridSpec, ScalarField
from stochastic_euler.models.common import ValidSplineOrder


class PeriodicSpline:
    """Periodic B-spline interpolant of one scalar array.

    Coefficients are prefiltered once; evaluation points are given in grid-index
    units (x / h). Points sitting exactly on a node return the stored sample, so
    the interpolant reproduces its data bit-for-bit there.
    """

    def __init__(self, values: FloatArray, grid: GridSpec, order: int = 3):
        self.grid = grid
        self.order = ValidSplineOrder.validate(order)
        self._values = np.asarray(values, dtype=np.float64)
        self._constant: float | None = None
        if np.all(self._values == self._values.flat[0]):
            self._constant = float(self._values.flat[0])
            self._coeffs = self._values
        else:
            self._coeffs = ndimage.spline_filter(
                self._values, order=order, mode="grid-wrap", output=np.float64
            )

    @classmethod
    def blend(cls, a: PeriodicSpline, b: PeriodicSpline, theta: float) -> PeriodicSpline:
        """Spline of (1 - theta) a + theta b; coefficients are linear in the data."""
        out = cls.__new__(cls)
        out.grid = a.grid
        out.order = a.order
        if theta == 0.0:
            out._values, out._coeffs, out._constant = a._values, a._coeffs, a._constant
            return out
        if theta == 1.0:
            out._values, out._coeffs, out._constant = b._values, b._coeffs, b._constant
            return out
        out._values = (1.0 - theta) * a._values + theta * b._values
        out._constant = None
        if a._constant is not None and b._constant is not None:
            out._constant = (1.0 - theta) * a._constant + theta * b._constant
        # a constant array is its own prefiltered coefficient array
        out._coeffs = (1.0 - theta) * a._coeffs + theta * b._coeffs
        return out

    def at_indices(self, coords: FloatArray) -> FloatArray:
        """Evaluate at index coordinates of shape (dim, npts)."""
        npts = coords.shape[1]
        if self._constant is not None:
            return np.full(npts, self._constant)
        out = ndimage.map_coordinates(
            self._coeffs, coords, order=self.order, mode="grid-wrap", prefilter=False
        )
        rounded = np.round(coords)
        on_node = np.all(coords == rounded, axis=0)
        if np.any(on_node):
            idx = np.mod(rounded[:, on_node].astype(np.int64), self.grid.n_per_axis)
            out[on_node] = self._values[tuple(idx)]
        return out

    def at_points(self, points: FloatArray) -> FloatArray:
        """Evaluate at physical positions of shape (npts, dim)."""
        coords = np.asarray(points, dtype=np.float64).T / self.grid.spacing
        return self.at_indices(coords)


def interpolate(f: ScalarField, points: FloatArray, order: int = 3) -> FloatArray:
    """Periodic spline interpolation of f at physical positions (npts, dim)."""
    pts = np.atleast_2d(np.asarray(points, dtype=np.float64))
    return PeriodicSpline(f.values, f.grid, order).at_points(pts)
