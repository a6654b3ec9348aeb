"""Semi-Lagrangian transport along backward characteristics.

Positions are carried in grid-index units. Velocities are spline-interpolated in
space and linear in time between frames; each frame interval is crossed with a
fixed number of RK4 substeps. All requested output nodes are traced in one
backward sweep: the characteristic ending at t_n joins the sweep when the sweep
reaches t_n, so every frame interval is visited once.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from stochastic_euler.exceptions import CharacteristicBlowupError, ValidationError
from stochastic_euler.fields.grid import FloatArray, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.fields.interpolation import PeriodicSpline
from stochastic_euler.fields.spectral import divergence_array
from stochastic_euler.models.config import TransportConfig

logger = logging.getLogger(__name__)


def _splines(frame: FloatArray, series: TimeSeriesField, order: int) -> list[PeriodicSpline]:
    return [PeriodicSpline(c, series.grid, order) for c in frame]


def _blend(
    a: list[PeriodicSpline], b: list[PeriodicSpline], theta: float
) -> list[PeriodicSpline]:
    return [PeriodicSpline.blend(sa, sb, theta) for sa, sb in zip(a, b)]


def _evaluate(splines: list[PeriodicSpline], coords: FloatArray) -> FloatArray:
    return np.stack([s.at_indices(coords) for s in splines])


def _components(series: TimeSeriesField) -> FloatArray:
    # (N_t + 1, c, *shape) with c = 1 for scalar series
    if series.kind == "vector":
        return series.data
    return series.data[:, np.newaxis]


@dataclass(frozen=True, eq=False)
class FlowMapSolve:
    """Backward characteristics dX/ds = a(s, X) of one advecting field."""

    advecting: TimeSeriesField
    config: TransportConfig = TransportConfig()

    def __post_init__(self) -> None:
        if self.advecting.kind != "vector":
            raise ValidationError("advecting field must be a vector series")
        grid = self.advecting.grid
        for n in range(self.advecting.n_nodes):
            frame = self.advecting.data[n]
            div = float(np.max(np.abs(divergence_array(frame, grid)), initial=0.0))
            scale = 1.0 + float(np.max(np.abs(frame), initial=0.0))
            if div > self.config.div_tol * scale:
                raise ValidationError(
                    f"advecting field is not divergence-free at node {n}: "
                    f"sup|div| = {div:.3e} > {self.config.div_tol:.1e} * {scale:.3e}"
                )

    @property
    def substeps(self) -> int:
        return self.config.integrator_substeps

    def trace(
        self,
        initial: FloatArray,
        forcing: TimeSeriesField | None = None,
        out_nodes: Sequence[int] | None = None,
    ) -> FloatArray:
        """Values of q(t_n, x) = q0(X(0)) + int_0^t_n F(s, X(s)) ds at every node x.

        ``initial`` holds the components of q0, shape (c, *grid.shape); the
        forcing (if any) must have the same components and time grid as the
        advecting field. Returns shape (len(out_nodes), c, *grid.shape).
        """
        series = self.advecting
        grid = series.grid
        order = self.config.spline_order
        n_total = series.n_nodes
        nodes = list(range(n_total)) if out_nodes is None else [int(n) for n in out_nodes]
        if any(n < 0 or n >= n_total for n in nodes):
            raise ValidationError(f"output nodes must lie in [0, {n_total - 1}]")
        if forcing is not None and forcing.is_zero:
            forcing = None
        if forcing is not None and forcing.n_nodes != n_total:
            raise ValidationError("forcing and advecting field need the same time grid")

        n_comp = initial.shape[0]
        npts = grid.size
        start = grid.index_coordinates()
        h = grid.spacing
        dt = float(series.t_grid[1] - series.t_grid[0]) if n_total > 1 else 0.0
        delta = dt / self.substeps
        still = series.is_zero
        f_data = None if forcing is None else _components(forcing)

        # blocks are appended in descending order of their output node
        order_desc = sorted(set(nodes), reverse=True)
        positions = np.empty((grid.dim, 0))
        integral = np.zeros((n_comp, 0))
        f_prev = np.zeros((n_comp, 0))
        pending = list(order_desc)

        def join(j: int) -> None:
            nonlocal positions, integral, f_prev
            while pending and pending[0] == j:
                pending.pop(0)
                positions = np.concatenate([positions, start], axis=1)
                integral = np.concatenate([integral, np.zeros((n_comp, npts))], axis=1)
                if f_data is not None:
                    nodal = f_data[j].reshape(n_comp, npts)
                    f_prev = np.concatenate([f_prev, nodal], axis=1)

        v_hi: list[PeriodicSpline] = []
        f_hi: list[PeriodicSpline] = []
        for j in range(n_total - 1, 0, -1):
            join(j)
            if positions.shape[1] == 0:
                continue
            if not still:
                v_hi = v_hi or _splines(series.data[j] / h, series, order)
                v_lo = _splines(series.data[j - 1] / h, series, order)
            if f_data is not None:
                f_hi = f_hi or _splines(f_data[j], series, order)
                f_lo = _splines(f_data[j - 1], series, order)
            for q in range(self.substeps):
                theta0 = 1.0 - q / self.substeps
                theta1 = 1.0 - (q + 1) / self.substeps
                if not still:
                    positions = self._rk4(positions, v_lo, v_hi, theta0, theta1, delta)
                if f_data is not None:
                    if still:
                        f_now = (1.0 - theta1) * f_data[j - 1] + theta1 * f_data[j]
                        f_next = np.tile(
                            f_now.reshape(n_comp, npts), (1, positions.shape[1] // npts)
                        )
                    else:
                        f_next = _evaluate(_blend(f_lo, f_hi, theta1), positions)
                    integral += 0.5 * delta * (f_prev + f_next)
                    f_prev = f_next
            if not still:
                v_hi = v_lo
            if f_data is not None:
                f_hi = f_lo
        join(0)
        logger.debug(
            "Traced %d output nodes across %d intervals (still=%s)",
            len(order_desc),
            n_total - 1,
            still,
        )

        if still:
            values = np.tile(initial.reshape(n_comp, npts), (1, len(order_desc)))
        else:
            values = _evaluate([PeriodicSpline(c, grid, order) for c in initial], positions)
        if f_data is not None:
            values = values + integral
        blocks = values.reshape(n_comp, len(order_desc), npts)
        by_node = {n: blocks[:, b] for b, n in enumerate(order_desc)}
        return np.stack([by_node[n].reshape(initial.shape) for n in nodes])

    def _rk4(
        self,
        x: FloatArray,
        lo: list[PeriodicSpline],
        hi: list[PeriodicSpline],
        theta0: float,
        theta1: float,
        delta: float,
    ) -> FloatArray:
        # one backward step from s(theta0) to s(theta1), delta > 0 in time units
        mid = 0.5 * (theta0 + theta1)
        a0 = _blend(lo, hi, theta0)
        am = _blend(lo, hi, mid)
        a1 = _blend(lo, hi, theta1)
        k1 = _evaluate(a0, x)
        k2 = _evaluate(am, x - 0.5 * delta * k1)
        k3 = _evaluate(am, x - 0.5 * delta * k2)
        k4 = _evaluate(a1, x - delta * k3)
        out = x - (delta / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        if not np.all(np.isfinite(out)):
            raise CharacteristicBlowupError("characteristic position became non-finite")
        return out


def _out_series(
    series: TimeSeriesField, values: FloatArray, nodes: Sequence[int] | None, vector: bool
) -> TimeSeriesField:
    t = series.t_grid if nodes is None else series.t_grid[list(nodes)]
    if vector:
        return TimeSeriesField(series.grid, t, values, "vector")
    return TimeSeriesField(series.grid, t, values[:, 0], "scalar")


def advect_scalar(
    rho0: ScalarField,
    advecting: TimeSeriesField,
    out_nodes: Sequence[int] | None = None,
    config: TransportConfig = TransportConfig(),
) -> TimeSeriesField:
    """rho(t, x) = rho0(X(0)) along backward characteristics of ``advecting``."""
    flow = FlowMapSolve(advecting, config)
    values = flow.trace(rho0.values[np.newaxis], None, out_nodes)
    return _out_series(advecting, values, out_nodes, vector=False)


def solve_forced_velocity(
    v0: VectorField,
    advecting: TimeSeriesField,
    forcing: TimeSeriesField,
    config: TransportConfig = TransportConfig(),
    out_nodes: Sequence[int] | None = None,
) -> TimeSeriesField:
    """Componentwise Duhamel formula u(t, x) = v0(X(0)) + int_0^t F(s, X(s)) ds."""
    flow = FlowMapSolve(advecting, config)
    values = flow.trace(v0.data, forcing, out_nodes)
    return _out_series(advecting, values, out_nodes, vector=True)


def reverse_in_time(series: TimeSeriesField) -> TimeSeriesField:
    """a(s) -> -a(T - s) on the same time grid."""
    return TimeSeriesField(series.grid, series.t_grid, -series.data[::-1], series.kind)


def reversibility_error(
    rho0: ScalarField, advecting: TimeSeriesField, config: TransportConfig = TransportConfig()
) -> float:
    """L2 distance between rho0 and its forward-then-backward transport."""
    last = advecting.n_nodes - 1
    forward = advect_scalar(rho0, advecting, [last], config).scalar_frame(0)
    back = advect_scalar(forward, reverse_in_time(advecting), [last], config).scalar_frame(0)
    diff = back.values - rho0.values
    return float(np.sqrt(np.sum(diff**2) * rho0.grid.cell_volume))
