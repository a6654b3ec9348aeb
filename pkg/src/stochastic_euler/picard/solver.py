"""Successive approximation over whole space-time trajectories.

Each sweep maps the previous projected iterate to a new one in four stages:
transport of the density, one pressure solve per time node, forced transport of
the velocity, and projection. Sweeps repeat until the W^{1,p} distance between
consecutive iterates, taken as a supremum over time nodes, drops below
picard_tol.
"""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from collections.abc import Callable, Iterator
from concurrent.futures import ThreadPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Any, TypeVar

import numpy as np

from stochastic_euler.config import Settings
from stochastic_euler.elliptic.pressure import solve_pressure
from stochastic_euler.elliptic.projection import leray_project
from stochastic_euler.exceptions import NoConvergenceError, SolverError
from stochastic_euler.fields.grid import FloatArray, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.fields.norms import cumulative_trapezoid, series_norms, sobolev_norm, sup_norm
from stochastic_euler.fields.spectral import divergence
from stochastic_euler.models.config import InitialIterate, RunConfig
from stochastic_euler.models.reports import IterationRecord, SolveReport, StoppingTimeResult
from stochastic_euler.noise.brownian import BrownianPath
from stochastic_euler.noise.q_wiener import QWienerPath
from stochastic_euler.picard.diagnostics import (
    check_spde_residual,
    monitor_convergence,
    verify_bounds,
)
from stochastic_euler.picard.initial import grid_for, initial_conditions
from stochastic_euler.picard.regimes import AdditiveRegime, MultiplicativeRegime, Regime
from stochastic_euler.picard.state import IterationState
from stochastic_euler.transport.characteristics import advect_scalar, solve_forced_velocity

logger = logging.getLogger(__name__)

T = TypeVar("T")

SOLENOIDAL_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class SweepResult:
    state: IterationState
    pi_norms: FloatArray  # ||grad pi(t)||_{2,p}
    cg_iterations: int
    rhs_mean_max: float


def _difference(a: TimeSeriesField, b: TimeSeriesField) -> TimeSeriesField:
    return TimeSeriesField(a.grid, a.t_grid, a.data - b.data, a.kind)


def _max_ratio(num: FloatArray, den: FloatArray) -> float | None:
    mask = den > 0.0
    if not np.any(mask):
        return None
    return float(np.max(num[mask] / den[mask]))


class PicardSolver:
    """Picard sweeps of one regime from fixed initial data."""

    def __init__(
        self,
        regime: Regime,
        rho0: ScalarField,
        v0: VectorField,
        cfg: RunConfig,
        settings: Settings | None = None,
    ):
        self.regime = regime
        self.rho0 = rho0
        self.v0 = v0
        self.cfg = cfg
        self.settings = settings or Settings()
        self.timing: dict[str, float] = defaultdict(float)

    @contextmanager
    def _phase(self, stage: str, k: int) -> Iterator[None]:
        start = time.perf_counter()
        try:
            yield
        except SolverError as e:
            raise e.locate(stage, k) from None
        finally:
            self.timing[stage] += time.perf_counter() - start

    def _map_nodes(self, fn: Callable[[int], T]) -> list[T]:
        workers = min(self.settings.worker_count, self.regime.n_nodes)
        if workers <= 1:
            return [fn(n) for n in range(self.regime.n_nodes)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(fn, range(self.regime.n_nodes)))

    def initial_iterate(self, kind: InitialIterate = "zero") -> TimeSeriesField:
        regime = self.regime
        if kind == "zero":
            return TimeSeriesField.constant_in_time(regime.t_grid, VectorField.zeros(regime.grid))
        return TimeSeriesField.constant_in_time(regime.t_grid, leray_project(self.v0).v)

    def sweep(self, v_prev: TimeSeriesField, k: int) -> SweepResult:
        """One full Picard map v^(k-1) -> (rho^(k), grad pi^(k), u^(k), v^(k))."""
        regime = self.regime
        cfg = self.cfg
        transport = cfg.transport
        p = cfg.p

        with self._phase("transport_rho", k):
            advecting = regime.advecting_field(v_prev)
            rho = advect_scalar(self.rho0, advecting, None, transport)

        with self._phase("pressure", k):

            def solve_node(n: int) -> tuple[FloatArray, int, float]:
                f, mean = regime.pressure_rhs(v_prev.vector_frame(n), n)
                solution = solve_pressure(rho.scalar_frame(n), f, cfg.elliptic)
                return solution.grad_pi.data, solution.stats.iterations, mean

            solved = self._map_nodes(solve_node)
            grad_pi = TimeSeriesField(
                regime.grid, regime.t_grid, np.stack([s[0] for s in solved]), "vector"
            )
            cg_iterations = sum(s[1] for s in solved)
            rhs_mean_max = max(abs(s[2]) for s in solved)

        with self._phase("transport_u", k):
            forcing = regime.forcing(grad_pi, rho, v_prev)
            u = solve_forced_velocity(self.v0, advecting, forcing, transport)

        with self._phase("projection", k):
            v, _ = regime.project(u)

        with self._phase("diagnostics", k):
            diff = series_norms(_difference(v, v_prev), 1, p)
            pi_norms = series_norms(grad_pi, 2, p)

        state = IterationState(k, rho, grad_pi, u, v, diff)
        return SweepResult(state, pi_norms, cg_iterations, rhs_mean_max)

    def _record(
        self,
        result: SweepResult,
        v_prev: TimeSeriesField,
        previous: IterationState | None,
        prev_record: IterationRecord | None,
        seconds: float,
    ) -> IterationRecord:
        state = result.state
        p = self.cfg.p
        t = self.regime.t_grid
        z = self.regime.z
        z_inv = self.regime.z_inv

        v_prev_norms = series_norms(v_prev, 2, p)
        k_den = z_inv**2 * v_prev_norms**2
        record: dict[str, Any] = dict(
            k=state.k,
            d=state.d,
            diff_norms=state.diff_norms.tolist(),
            K_surrogate=_max_ratio(result.pi_norms, k_den),
            cg_iterations=result.cg_iterations,
            rhs_mean_max=result.rhs_mean_max,
            seconds=seconds,
        )
        if previous is not None and prev_record is not None:
            sigma = series_norms(_difference(state.rho, previous.rho), 1, p)
            grad_q = series_norms(_difference(state.grad_pi, previous.grad_pi), 1, p)
            h = series_norms(_difference(state.u, previous.u), 1, p)
            w_prev = np.asarray(prev_record.diff_norms)
            driven = cumulative_trapezoid(z_inv * w_prev, t)
            record.update(
                sigma_norms=sigma.tolist(),
                grad_q_norms=grad_q.tolist(),
                h_norms=h.tolist(),
                L5=_max_ratio(sigma, driven),
                L6=_max_ratio(grad_q, sigma + z_inv**2 * w_prev),
                L9=_max_ratio(h, cumulative_trapezoid(z * grad_q + z_inv * w_prev + z * sigma, t)),
                L10=_max_ratio(state.diff_norms, driven),
            )
        return IterationRecord(**record)

    def run(self, initial_iterate: InitialIterate = "zero") -> tuple[IterationState, SolveReport]:
        """Sweep until d_k <= picard_tol; NoConvergenceError after k_max sweeps."""
        cfg = self.cfg
        v_prev = self.initial_iterate(initial_iterate)
        previous: IterationState | None = None
        history: list[IterationRecord] = []
        for k in range(1, cfg.k_max + 1):
            start = time.perf_counter()
            result = self.sweep(v_prev, k)
            state = result.state
            prev_record = history[-1] if history else None
            history.append(
                self._record(result, v_prev, previous, prev_record, time.perf_counter() - start)
            )
            logger.info("Picard k=%d: d_k = %.3e", k, state.d)
            if state.d <= cfg.picard_tol:
                return state, self._report(True, state, history)
            previous, v_prev = state, state.v

        report = self._report(False, state, history)
        raise NoConvergenceError(
            f"Picard iteration did not reach {cfg.picard_tol:.1e} in {cfg.k_max} sweeps "
            f"(last d_k = {state.d:.3e})",
            residual=state.d,
            history=[r.d for r in history],
            partial=(state, report),
        ).locate("picard", cfg.k_max)

    def _report(
        self, converged: bool, state: IterationState, history: list[IterationRecord]
    ) -> SolveReport:
        return SolveReport(
            regime=self.regime.name,
            converged=converged,
            iterations=state.k,
            final_diff=state.d,
            horizon=float(self.regime.t_grid[-1]),
            n_nodes=self.regime.n_nodes,
            A=0.0,
            A_declared=False,
            history=history,
            timing=dict(self.timing),
        )


def solenoidal_v0(v0: VectorField) -> VectorField:
    """v0 itself when divergence-free, else its Leray projection."""
    div = sup_norm(divergence(v0))
    if div <= SOLENOIDAL_TOL * (1.0 + sup_norm(v0)):
        return v0
    logger.warning("v0 is not divergence-free (sup|div| = %.3e); projecting it", div)
    return leray_project(v0).v


def default_radius(v0: VectorField, p: float) -> float:
    """A = 8 (1 + ||v0||_{2,p})."""
    return 8.0 * (1.0 + sobolev_norm(v0, 2, p))


@dataclass(frozen=True, eq=False)
class Horizon:
    regime: Regime
    A: float
    A_declared: bool
    stopping_time: StoppingTimeResult
    beyond_tau: bool


def resolve_horizon(regime: Regime, v0: VectorField, cfg: RunConfig) -> Horizon:
    """Ball radius, stopping time and the regime restricted to the run horizon."""
    declared = cfg.A is not None
    A = cfg.A if cfg.A is not None else default_radius(v0, cfg.p)
    st = regime.stopping_time(A, cfg)
    logger.info(
        "Stopping time tau = %.6g (node %d, capped=%s, A = %.4g)", st.tau, st.tau_node, st.capped, A
    )
    if cfg.resolved_horizon_mode == "stopping_time":
        return Horizon(regime.truncate(st.tau_node + 1), A, declared, st, False)
    beyond = not st.capped
    if beyond:
        logger.warning(
            "Horizon %.6g runs beyond tau = %.6g; ball containment is untested past tau",
            float(regime.t_grid[-1]),
            st.tau,
        )
    return Horizon(regime, A, declared, st, beyond)


def run_regime(
    cfg: RunConfig,
    regime: Regime,
    rho0: ScalarField | None = None,
    v0: VectorField | None = None,
    settings: Settings | None = None,
    initial_iterate: InitialIterate | None = None,
    diagnostics: bool = True,
) -> tuple[IterationState, SolveReport]:
    """Resolve the horizon, run the sweeps and attach bound and residual checks."""
    if rho0 is None or v0 is None:
        rho_default, v_default = initial_conditions(cfg)
        rho0 = rho_default if rho0 is None else rho0
        v0 = v_default if v0 is None else v0
    v0 = solenoidal_v0(v0)
    horizon = resolve_horizon(regime, v0, cfg)
    solver = PicardSolver(horizon.regime, rho0, v0, cfg, settings)

    def annotate(report: SolveReport) -> SolveReport:
        return report.model_copy(
            update=dict(
                A=horizon.A,
                A_declared=horizon.A_declared,
                stopping_time=horizon.stopping_time,
                horizon_beyond_tau=horizon.beyond_tau,
                convergence=monitor_convergence(report.history) if report.history else None,
            )
        )

    try:
        state, report = solver.run(initial_iterate or cfg.initial_iterate)
    except NoConvergenceError as e:
        if e.partial is not None:
            e.partial = (e.partial[0], annotate(e.partial[1]))
        raise
    report = annotate(report)
    if diagnostics:
        bounds = verify_bounds(state, horizon.regime, rho0, cfg, horizon.A, horizon.A_declared)
        residuals = check_spde_residual(state, horizon.regime)
        report = report.model_copy(update=dict(bounds=bounds, residuals=residuals))
    logger.info(
        "Run finished: regime=%s converged=%s k=%d d=%.3e",
        report.regime,
        report.converged,
        report.iterations,
        report.final_diff,
    )
    return state, report


def run_multiplicative(
    cfg: RunConfig,
    path: BrownianPath,
    rho0: ScalarField | None = None,
    v0: VectorField | None = None,
    settings: Settings | None = None,
    initial_iterate: InitialIterate | None = None,
) -> tuple[IterationState, SolveReport]:
    """Picard scheme for multiplicative Stratonovich noise, starting from v~^(0) = 0."""
    regime = MultiplicativeRegime(grid_for(cfg), path)
    return run_regime(cfg, regime, rho0, v0, settings, initial_iterate)


def run_additive(
    cfg: RunConfig,
    qpath: QWienerPath,
    rho0: ScalarField | None = None,
    v0: VectorField | None = None,
    settings: Settings | None = None,
    initial_iterate: InitialIterate | None = None,
) -> tuple[IterationState, SolveReport]:
    """Picard scheme for additive Q-Wiener noise."""
    return run_regime(cfg, AdditiveRegime(qpath), rho0, v0, settings, initial_iterate)
