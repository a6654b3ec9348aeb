"""Report models emitted by checks, solvers and runs."""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, Field


class StratonovichReport(BaseModel):
    """Deviation of one integrated path from v0 exp(-W(t))."""

    seed: int
    n_steps: int
    t_run: float
    v0: float
    heun_error: float
    ito_error: float


class StratonovichConvergenceReport(BaseModel):
    """Mean strong errors over paths at successive refinements."""

    paths: int
    steps: list[int]
    heun_errors: list[float]
    ito_errors: list[float]
    heun_ratios: list[float]
    ito_ratios: list[float]


class MaxPrincipleReport(BaseModel):
    """Worst excursion of a density series outside [m - tol, M + tol]."""

    m: float
    M: float
    range_tol: float
    min_value: float
    max_value: float
    worst_violation: float
    passed: bool
    node: int | None = None
    point: list[int] | None = None


class GradientBoundReport(BaseModel):
    """Nodewise sup |grad rho(t)| against sqrt(3) sup |grad rho0| exp(int sup |grad v|)."""

    lhs: list[float]
    rhs: list[float]
    bound_slack: float
    worst_ratio: float
    passed: bool
    growth_exponent: list[float | None]


class DivergenceReport(BaseModel):
    """Nodewise sup |div v| against tol (1 + sup |v|)."""

    max_divergence: list[float]
    tol: float
    worst_ratio: float
    passed: bool


class PressureStats(BaseModel):
    """Bookkeeping of one pressure solve."""

    iterations: int
    residual: float
    rhs_mean: float


class StoppingTimeResult(BaseModel):
    """First crossing of a stopping functional on the time grid."""

    tau: float
    tau_node: int
    crossing: float
    threshold: float
    criterion_trace: list[float]
    capped: bool


class IterationRecord(BaseModel):
    """Diagnostics of one Picard sweep.

    Difference norms are per time node, in W^{1,p}. The empirical constants L5 to L10
    are maxima over nodes of left-hand side over bound expression and stay None
    when the bound expression vanishes everywhere.
    """

    k: int
    d: float
    diff_norms: list[float]
    sigma_norms: list[float] | None = None
    grad_q_norms: list[float] | None = None
    h_norms: list[float] | None = None
    L5: float | None = None
    L6: float | None = None
    L9: float | None = None
    L10: float | None = None
    K_surrogate: float | None = None
    cg_iterations: int = 0
    rhs_mean_max: float = 0.0
    seconds: float = 0.0


class ConvergenceReport(BaseModel):
    """Cauchy behaviour of d_k = sup_t ||v^(k) - v^(k-1)||_{1,p}."""

    d: list[float]
    ratios: list[float | None]
    partial_sums: list[float]
    k0: int | None
    passed: bool
    diagnostic: str = ""
    sigma_sup: list[float | None] = Field(default_factory=list)
    grad_q_sup: list[float | None] = Field(default_factory=list)
    L5: list[float | None] = Field(default_factory=list)
    L6: list[float | None] = Field(default_factory=list)


class BoundsReport(BaseModel):
    """A priori bounds evaluated on an iterate."""

    A: float
    A_declared: bool
    sup_v_2p: float
    ball_passed: bool | None
    grad_rho_sup_1p: float
    grad_rho_bound: float
    grad_rho_passed: bool
    observed_exponent: float | None
    max_principle: MaxPrincipleReport
    gradient_bound: GradientBoundReport
    divergence: DivergenceReport
    passed: bool


class ResidualReport(BaseModel):
    """Nodewise L2 residuals of the density and velocity equations."""

    form: str
    regime: str
    rho_residual: list[float]
    velocity_residual: list[float]
    rho_sup: float
    velocity_sup: float


class SolveReport(BaseModel):
    """Outcome of one Picard run."""

    regime: str
    converged: bool
    iterations: int
    final_diff: float
    horizon: float
    n_nodes: int
    A: float
    A_declared: bool
    stopping_time: StoppingTimeResult | None = None
    horizon_beyond_tau: bool = False
    history: list[IterationRecord] = Field(default_factory=list)
    residuals: ResidualReport | None = None
    convergence: ConvergenceReport | None = None
    bounds: BoundsReport | None = None
    timing: dict[str, float] = Field(default_factory=dict)


class UniquenessReport(BaseModel):
    """Two runs of one noise path from different initial iterates."""

    difference: float
    tol: float
    passed: bool
    iterations_a: int
    iterations_b: int


class NodeNorms(BaseModel):
    """One row of norms.csv."""

    t: float
    v_0p: float
    v_1p: float
    v_2p: float
    grad_rho_1p: float
    rho_min: float
    rho_max: float
    div_sup: float


class NoiseNorms(BaseModel):
    """Per-node norms of the Q-Wiener frames driving an additive run."""

    k2: list[float]
    c2: list[float]
    w2p: list[float]


class RunReport(BaseModel):
    """Everything written to run.json."""

    format: str
    version: str
    domain: str
    config: dict[str, Any]
    warnings: list[str]
    seed: int
    tau: float | None
    solve: SolveReport
    norms: list[NodeNorms]
    threads: int
    noise_norms: NoiseNorms | None = None


class FieldDifference(BaseModel):
    """Sup-over-nodes differences of one stored field."""

    l2: float
    w1p: float


class CompareReport(BaseModel):
    """Differences between two run directories."""

    p: float
    fields: dict[str, FieldDifference]
    max_l2: float


class VerifyReport(BaseModel):
    """Checks re-run on stored fields."""

    bounds: BoundsReport
    residuals: ResidualReport
    convergence: ConvergenceReport
    passed: bool
