"""Stopping times of the two noise regimes."""

from __future__ import annotations

import math

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import FloatArray
from stochastic_euler.fields.norms import cumulative_trapezoid
from stochastic_euler.models.reports import StoppingTimeResult
from stochastic_euler.noise.brownian import ExpFactor


def first_crossing(trace: FloatArray, t_grid: FloatArray, threshold: float) -> StoppingTimeResult:
    """First node where ``trace`` reaches ``threshold``; capped at the last node otherwise.

    ``crossing`` refines the node by linear interpolation of the trace between
    the node and its predecessor.
    """
    hits = np.flatnonzero(trace >= threshold)
    if hits.size == 0:
        last = int(t_grid.size - 1)
        return StoppingTimeResult(
            tau=float(t_grid[last]),
            tau_node=last,
            crossing=float(t_grid[last]),
            threshold=threshold,
            criterion_trace=trace.tolist(),
            capped=True,
        )
    node = int(hits[0])
    crossing = float(t_grid[node])
    if node > 0:
        lo, hi = float(trace[node - 1]), float(trace[node])
        if hi > lo:
            frac = (threshold - lo) / (hi - lo)
            crossing = float(t_grid[node - 1] + frac * (t_grid[node] - t_grid[node - 1]))
    return StoppingTimeResult(
        tau=float(t_grid[node]),
        tau_node=node,
        crossing=crossing,
        threshold=threshold,
        criterion_trace=trace.tolist(),
        capped=False,
    )


def _check_radius(A: float) -> None:
    if not A > 1.0:
        raise ValidationError(f"Invalid ball radius A={A}. Must exceed 1")


def stopping_time_multiplicative(factor: ExpFactor, A: float) -> StoppingTimeResult:
    """tau = inf{t : int_0^t exp(-W(s)) ds >= A^-2} capped at the end of the time grid."""
    _check_radius(A)
    trace = cumulative_trapezoid(factor.z_inv, factor.t_grid)
    return first_crossing(trace, factor.t_grid, A**-2)


def stopping_time_additive(
    qw_norms: FloatArray,
    t_grid: FloatArray,
    A: float,
    c1: float = 1.0,
    c2: float = 1.0,
    c3: float = 1.0,
) -> StoppingTimeResult:
    """First crossing of 1/3 by

    max(c1, c2, 1) A^2 t + c3 e int_0^t ||W^Q||_{k,2} ds + c3 A^-1 ||W^Q(t)||_{k,2}.
    """
    _check_radius(A)
    norms = np.asarray(qw_norms, dtype=np.float64)
    trace = (
        max(c1, c2, 1.0) * A**2 * t_grid
        + c3 * math.e * cumulative_trapezoid(norms, t_grid)
        + c3 * norms / A
    )
    return first_crossing(trace, t_grid, 1.0 / 3.0)
