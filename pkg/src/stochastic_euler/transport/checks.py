"""Discrete checks of the transport estimates."""

from __future__ import annotations

import math

import numpy as np

from stochastic_euler.fields.grid import FloatArray, GridSpec, ScalarField, TimeSeriesField
from stochastic_euler.fields.norms import cumulative_trapezoid, series_norms, sobolev_norm
from stochastic_euler.fields.spectral import gradient, gradient_array, jacobian_array
from stochastic_euler.models.reports import GradientBoundReport, MaxPrincipleReport


def range_tolerance(rho0: ScalarField, overshoot_factor: float) -> float:
    """overshoot_factor * (max rho0 - min rho0) * h^2."""
    spread = float(rho0.values.max() - rho0.values.min())
    return overshoot_factor * spread * rho0.grid.spacing**2


def check_max_principle(
    series: TimeSeriesField, m: float, M: float, range_tol: float = 0.0
) -> MaxPrincipleReport:
    """Worst violation of m - range_tol <= rho <= M + range_tol over all nodes and points."""
    data = series.data
    below = (m - range_tol) - data
    above = data - (M + range_tol)
    excess = np.maximum(below, above)
    worst = float(excess.max())
    node: int | None = None
    point: list[int] | None = None
    if worst > 0.0:
        idx = np.unravel_index(int(np.argmax(excess)), excess.shape)
        node = int(idx[0])
        point = [int(i) for i in idx[1:]]
    return MaxPrincipleReport(
        m=m,
        M=M,
        range_tol=range_tol,
        min_value=float(data.min()),
        max_value=float(data.max()),
        worst_violation=max(worst, 0.0),
        passed=worst <= 0.0,
        node=node,
        point=point,
    )


def gradient_sup(values: FloatArray, grid: GridSpec) -> float:
    """sup_x max_i |d_i f(x)|, the sup norm of the gradient components."""
    return float(np.abs(gradient_array(values, grid)).max(initial=0.0))


def jacobian_sup(data: FloatArray, grid: GridSpec) -> float:
    """sup_x max_{i,j} |d_j v^i(x)|."""
    return float(np.abs(jacobian_array(data, grid)).max(initial=0.0))


def check_gradient_bound(
    series: TimeSeriesField,
    advecting: TimeSeriesField,
    rho0: ScalarField,
    bound_slack: float = 0.05,
    p: float = 4.0,
) -> GradientBoundReport:
    """sup|grad rho(t)| <= sqrt(3) sup|grad rho0| exp(int_0^t sup|grad a| ds) at every node.

    Also reports log(||grad rho(t)||_{1,p} / ||grad rho0||_{1,p}) / int_0^t ||a||_{2,p} ds,
    the observed growth exponent; it is monitored, never asserted.
    """
    grid = series.grid
    t = series.t_grid
    lhs = np.array([gradient_sup(series.data[n], grid) for n in range(series.n_nodes)])
    jac = np.array([jacobian_sup(advecting.data[n], grid) for n in range(advecting.n_nodes)])
    rhs = math.sqrt(3.0) * gradient_sup(rho0.values, grid) * np.exp(cumulative_trapezoid(jac, t))
    allowed = rhs * (1.0 + bound_slack)
    ratios = np.divide(lhs, allowed, out=np.zeros_like(lhs), where=allowed > 0)
    # round-off floor: both sides vanish for constant data
    floor = 1e-12 * (1.0 + float(np.abs(rho0.values).max())) / grid.spacing
    violated = lhs > allowed + floor

    grad0 = sobolev_norm(gradient(rho0), 1, p)
    grad_t = [sobolev_norm(gradient(series.scalar_frame(n)), 1, p) for n in range(series.n_nodes)]
    speed = cumulative_trapezoid(series_norms(advecting, 2, p), t)
    exponent: list[float | None] = []
    for g, s in zip(grad_t, speed):
        if grad0 > floor and g > floor and s > 0.0:
            exponent.append(float(math.log(g / grad0) / s))
        else:
            exponent.append(None)

    return GradientBoundReport(
        lhs=lhs.tolist(),
        rhs=rhs.tolist(),
        bound_slack=bound_slack,
        worst_ratio=float(ratios.max(initial=0.0)),
        passed=not bool(violated.any()),
        growth_exponent=exponent,
    )
