"""Checks run on Picard iterates: Cauchy decay, a priori bounds and equation residuals."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from typing import Literal

import numpy as np

from stochastic_euler.elliptic.projection import check_divergence_free
from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import FloatArray, ScalarField, TimeSeriesField
from stochastic_euler.fields.norms import (
    cumulative_trapezoid,
    series_l2,
    series_norms,
    sobolev_norm,
)
from stochastic_euler.fields.spectral import gradient, jacobian_array
from stochastic_euler.models.config import RunConfig
from stochastic_euler.models.reports import (
    BoundsReport,
    ConvergenceReport,
    IterationRecord,
    ResidualReport,
)
from stochastic_euler.picard.regimes import Regime
from stochastic_euler.picard.state import IterationState
from stochastic_euler.transport.checks import (
    check_gradient_bound,
    check_max_principle,
    range_tolerance,
)

logger = logging.getLogger(__name__)

ResidualForm = Literal["differential", "integral"]

DIVERGENCE_TOL = 1e-10


def monitor_convergence(history: Sequence[IterationRecord | float]) -> ConvergenceReport:
    """Cauchy behaviour of d_k over consecutive sweeps.

    k0 is the first k from which every later pair decreases (or reaches zero);
    the check passes when such a k0 exists with at least one pair after it, or
    when every d_k is zero.
    """
    if not history:
        raise ValidationError("monitor_convergence needs at least one iterate")
    records = [h for h in history if isinstance(h, IterationRecord)]
    d = [h.d if isinstance(h, IterationRecord) else float(h) for h in history]

    ratios: list[float | None] = [
        d[i + 1] / d[i] if d[i] > 0.0 else None for i in range(len(d) - 1)
    ]
    decreasing = [d[i + 1] < d[i] or d[i + 1] == 0.0 for i in range(len(d) - 1)]

    k0: int | None = None
    for i in range(len(decreasing) - 1, -1, -1):
        if not decreasing[i]:
            break
        k0 = i + 1
    if all(x == 0.0 for x in d):
        k0 = 1
    passed = k0 is not None

    diagnostic = ""
    if not passed:
        last = len(d)
        diagnostic = (
            f"d_k did not decay: d_{last - 1} = {d[-2]:.3e}, d_{last} = {d[-1]:.3e}"
            if len(d) > 1
            else f"single iterate with d_1 = {d[0]:.3e}; decay cannot be assessed"
        )
        logger.warning("Convergence monitor failed: %s", diagnostic)

    def sup(values: list[float] | None) -> float | None:
        return max(values) if values else None

    return ConvergenceReport(
        d=d,
        ratios=ratios,
        partial_sums=np.cumsum(d).tolist(),
        k0=k0,
        passed=passed,
        diagnostic=diagnostic,
        sigma_sup=[sup(r.sigma_norms) for r in records],
        grad_q_sup=[sup(r.grad_q_norms) for r in records],
        L5=[r.L5 for r in records],
        L6=[r.L6 for r in records],
    )


def verify_bounds(
    state: IterationState,
    regime: Regime,
    rho0: ScalarField,
    cfg: RunConfig,
    A: float,
    A_declared: bool,
) -> BoundsReport:
    """A priori bounds on a converged iterate.

    Hard checks: the max principle, divergence of every velocity frame, the
    pointwise gradient estimate and, when A was declared, containment of the
    iterate in the W^{2,p} ball of radius A. The W^{1,p} bound on grad rho is
    reported only.
    """
    p = cfg.p
    slack = cfg.bound_slack
    grid = rho0.grid

    sup_v = float(series_norms(state.v, 2, p).max())
    ball_passed = sup_v <= A if A_declared else None

    grad0 = sobolev_norm(gradient(rho0), 1, p)
    grad_t = np.array(
        [sobolev_norm(gradient(state.rho.scalar_frame(n)), 1, p) for n in range(state.rho.n_nodes)]
    )
    grad_sup = float(grad_t.max())
    bound = math.e * grad0
    floor = 1e-12 * (1.0 + float(np.abs(rho0.values).max())) / grid.spacing
    exponent = math.log(grad_sup / grad0) if grad0 > floor and grad_sup > floor else None

    m, M = float(rho0.values.min()), float(rho0.values.max())
    max_principle = check_max_principle(
        state.rho, m, M, range_tolerance(rho0, cfg.overshoot_factor)
    )
    gradient_bound = check_gradient_bound(
        state.rho, regime.advecting_field(state.v), rho0, slack, p
    )
    divergence = check_divergence_free(state.v, DIVERGENCE_TOL)

    passed = (
        max_principle.passed
        and divergence.passed
        and gradient_bound.passed
        and ball_passed is not False
    )
    if not passed:
        logger.warning(
            "Bound check failed: max_principle=%s divergence=%s gradient=%s ball=%s",
            max_principle.passed,
            divergence.passed,
            gradient_bound.passed,
            ball_passed,
        )
    return BoundsReport(
        A=A,
        A_declared=A_declared,
        sup_v_2p=sup_v,
        ball_passed=ball_passed,
        grad_rho_sup_1p=grad_sup,
        grad_rho_bound=bound,
        grad_rho_passed=grad_sup <= bound * (1.0 + slack) + floor,
        observed_exponent=exponent,
        max_principle=max_principle,
        gradient_bound=gradient_bound,
        divergence=divergence,
        passed=passed,
    )


def _time_derivative(data: FloatArray, t_grid: FloatArray) -> FloatArray:
    """Centered differences inside, second-order one-sided at the ends."""
    if t_grid.size < 2:
        return np.zeros_like(data)
    return np.gradient(data, t_grid, axis=0, edge_order=2 if t_grid.size >= 3 else 1)


def residual_form(regime: Regime) -> ResidualForm:
    """Integral form for noise-driven regimes, whose paths are too rough to differentiate."""
    return "differential" if regime.name == "deterministic" else "integral"


def check_spde_residual(
    state: IterationState, regime: Regime, form: ResidualForm | None = None
) -> ResidualReport:
    """Nodewise L2 residuals of the density and velocity equations solved by an iterate.

    With y = v minus the regime's noise field, the velocity residual is
    y_t + z^-1 (v . grad) v + z grad pi / rho, and the density residual is
    rho_t + z^-1 (v . grad) rho. The integral form integrates both from 0 to t
    instead of differentiating in time. Without ``form`` the regime picks one
    (see residual_form).
    """
    if form is None:
        form = residual_form(regime)
    grid = regime.grid
    t = regime.t_grid
    shape = (-1,) + (1,) * grid.dim

    v = state.v.data
    noise = regime.noise_field()
    y = v - noise.data if noise is not None else v
    z = regime.z.reshape(shape)
    z_inv = regime.z_inv.reshape(shape)
    rho = state.rho.data

    a = z_inv[:, np.newaxis] * v
    v_jac = jacobian_array(v, grid)
    rho_grad = jacobian_array(rho, grid)
    rest_v = np.einsum("nj...,nij...->ni...", a, v_jac) + (
        z[:, np.newaxis] * state.grad_pi.data / rho[:, np.newaxis]
    )
    rest_rho = np.einsum("nj...,nj...->n...", a, rho_grad)

    if form == "differential":
        res_v = _time_derivative(y, t) + rest_v
        res_rho = _time_derivative(rho, t) + rest_rho
    elif form == "integral":
        res_v = y - y[0] + cumulative_trapezoid(rest_v, t)
        res_rho = rho - rho[0] + cumulative_trapezoid(rest_rho, t)
    else:
        raise ValidationError(f"Unknown residual form {form!r}")

    velocity = series_l2(TimeSeriesField(grid, t, res_v, "vector"))
    density = series_l2(TimeSeriesField(grid, t, res_rho, "scalar"))
    report = ResidualReport(
        form=form,
        regime=regime.name,
        rho_residual=density.tolist(),
        velocity_residual=velocity.tolist(),
        rho_sup=float(density.max()),
        velocity_sup=float(velocity.max()),
    )
    logger.debug(
        "Residuals (%s): rho %.3e, velocity %.3e", form, report.rho_sup, report.velocity_sup
    )
    return report
