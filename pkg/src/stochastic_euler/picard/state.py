"""Picard iterates."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from stochastic_euler.fields.grid import FloatArray, TimeSeriesField


@dataclass(frozen=True, eq=False)
class IterationState:
    """One whole space-time iterate (rho^(k), grad pi^(k), u^(k), v^(k)).

    ``v`` is the projected iterate: v~^(k) in the multiplicative regime, v^(k)
    in the additive one. ``diff_norms`` holds ||v^(k)(t) - v^(k-1)(t)||_{1,p} per node.
    """

    k: int
    rho: TimeSeriesField
    grad_pi: TimeSeriesField
    u: TimeSeriesField
    v: TimeSeriesField
    diff_norms: FloatArray

    @property
    def d(self) -> float:
        """sup over nodes of the difference norm."""
        return float(np.max(self.diff_norms, initial=0.0))

    @property
    def t_grid(self) -> FloatArray:
        return self.v.t_grid
