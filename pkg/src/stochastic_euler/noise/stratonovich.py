"""Check of the Stratonovich change of variables on the spatially constant equation.

dv = -v o dW has the closed-form solution v(t) = v0 exp(-W(t)). The Stratonovich
Heun scheme must converge to it along a fixed path; the Ito form of the same
equation, dv = -v dW + v/2 dt, is integrated with Euler-Maruyama for comparison.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import FloatArray
from stochastic_euler.models.reports import StratonovichConvergenceReport, StratonovichReport
from stochastic_euler.noise.brownian import BrownianPath, exp_factor, sample_brownian

logger = logging.getLogger(__name__)


def heun(v0: float, path: BrownianPath) -> FloatArray:
    """Stratonovich Heun (predictor-corrector midpoint) for dv = -v o dW."""
    dw = path.increments
    v = np.empty(path.t_grid.size)
    v[0] = v0
    for i, step in enumerate(dw):
        predictor = v[i] - v[i] * step
        v[i + 1] = v[i] - 0.5 * (v[i] + predictor) * step
    return v


def euler_maruyama_ito(v0: float, path: BrownianPath) -> FloatArray:
    """Euler-Maruyama for the Ito-corrected dv = -v dW + v/2 dt."""
    dw = path.increments
    dt = np.diff(path.t_grid)
    v = np.empty(path.t_grid.size)
    v[0] = v0
    for i in range(dw.size):
        v[i + 1] = v[i] - v[i] * dw[i] + 0.5 * v[i] * dt[i]
    return v


def _errors(v0: float, path: BrownianPath) -> tuple[float, float]:
    exact = v0 * exp_factor(path).z_inv
    return (
        float(np.max(np.abs(heun(v0, path) - exact))),
        float(np.max(np.abs(euler_maruyama_ito(v0, path) - exact))),
    )


def verify_stratonovich_reduction(
    seed: int,
    n_steps: int,
    v0: float = 1.0,
    t_run: float = 1.0,
    zero_path: bool = False,
) -> StratonovichReport:
    """Maximum nodal deviation of both schemes from v0 exp(-W(t))."""
    if zero_path:
        path = BrownianPath.zero(t_run, n_steps, seed)
    else:
        path = sample_brownian(t_run, n_steps, seed)
    heun_error, ito_error = _errors(v0, path)
    return StratonovichReport(
        seed=seed,
        n_steps=n_steps,
        t_run=t_run,
        v0=v0,
        heun_error=heun_error,
        ito_error=ito_error,
    )


def stratonovich_convergence(
    seeds: Iterable[int],
    finest_steps: int = 1024,
    levels: int = 3,
    v0: float = 1.0,
    t_run: float = 1.0,
) -> StratonovichConvergenceReport:
    """Strong-error study over several paths.

    Each path is sampled once at ``finest_steps`` and coarsened by powers of two,
    so every level sees the same Brownian motion. Errors are averaged over paths
    per level; ratios compare consecutive levels (coarse error / fine error).
    """
    if levels < 2:
        raise ValidationError(f"levels must be >= 2, got {levels}")
    if finest_steps % 2 ** (levels - 1):
        raise ValidationError(f"finest_steps {finest_steps} is not divisible by 2^{levels - 1}")
    seeds = list(seeds)
    if not seeds:
        raise ValidationError("stratonovich_convergence needs at least one seed")
    factors = [2 ** (levels - 1 - i) for i in range(levels)]
    heun_err = np.zeros(levels)
    ito_err = np.zeros(levels)
    for seed in seeds:
        fine = sample_brownian(t_run, finest_steps, seed)
        for i, factor in enumerate(factors):
            h, e = _errors(v0, fine.coarsen(factor))
            heun_err[i] += h
            ito_err[i] += e
    heun_err /= len(seeds)
    ito_err /= len(seeds)
    report = StratonovichConvergenceReport(
        paths=len(seeds),
        steps=[finest_steps // f for f in factors],
        heun_errors=heun_err.tolist(),
        ito_errors=ito_err.tolist(),
        heun_ratios=(heun_err[:-1] / heun_err[1:]).tolist(),
        ito_ratios=(ito_err[:-1] / ito_err[1:]).tolist(),
    )
    logger.info("Stratonovich study: Heun ratios %s", report.heun_ratios)
    return report
