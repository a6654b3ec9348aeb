"""Run orchestration and the files a run leaves behind.

A run directory holds:

- ``run.json``: the RunReport
- ``norms.csv``: per-node norms, followed by the d_k history
- ``config.txt``: the configuration in key=value form
- ``rho0.bin``, ``v0.bin``: initial data
- ``rho.bin``, ``v.bin``, ``u.bin``, ``grad_pi.bin``: final iterate series
- ``noise.bin``: the driving path

Every ``.bin`` file comes with its ``.bin.json`` header.
"""

from __future__ import annotations

import csv
import io
import logging
from pathlib import Path

import numpy as np

from stochastic_euler import __version__
from stochastic_euler.cli.config_io import format_config
from stochastic_euler.config import Settings
from stochastic_euler.exceptions import LabError, NoConvergenceError, ShapeMismatchError
from stochastic_euler.fields.grid import FloatArray, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.fields.io import (
    FieldHeader,
    read_array,
    read_field,
    read_series,
    write_field,
    write_series,
)
from stochastic_euler.fields.norms import series_l2, series_norms, sobolev_norm, sup_norm
from stochastic_euler.fields.spectral import divergence, gradient
from stochastic_euler.models.config import RunConfig
from stochastic_euler.models.reports import (
    CompareReport,
    FieldDifference,
    NodeNorms,
    NoiseNorms,
    RunReport,
    SolveReport,
    VerifyReport,
)
from stochastic_euler.noise.q_wiener import q_wiener_norms
from stochastic_euler.noise.storage import write_noise
from stochastic_euler.picard.diagnostics import (
    check_spde_residual,
    monitor_convergence,
    verify_bounds,
)
from stochastic_euler.picard.initial import RHO0_FILE, V0_FILE, initial_conditions
from stochastic_euler.picard.regimes import AdditiveRegime, Regime, build_regime
from stochastic_euler.picard.solver import run_regime
from stochastic_euler.picard.state import IterationState

logger = logging.getLogger(__name__)

REPORT_FILE = "run.json"
NORMS_FILE = "norms.csv"
CONFIG_FILE = "config.txt"
NOISE_FILE = "noise.bin"
SERIES_FILES = {"rho": "rho.bin", "v": "v.bin", "u": "u.bin", "grad_pi": "grad_pi.bin"}

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NO_CONVERGENCE = 2

NORM_COLUMNS = list(NodeNorms.model_fields)


def domain_tag(cfg: RunConfig) -> str:
    return f"T^{cfg.dim} periodic, L={cfg.length!r}, n={cfg.n_per_axis}"


def node_norms(state: IterationState, regime: Regime, p: float) -> list[NodeNorms]:
    """Norms of the physical velocity and of the density at every node."""
    velocity = regime.physical_velocity(state.v)
    rows = []
    for n in range(state.v.n_nodes):
        v = velocity.vector_frame(n)
        rho = state.rho.scalar_frame(n)
        rows.append(
            NodeNorms(
                t=float(state.t_grid[n]),
                v_0p=sobolev_norm(v, 0, p),
                v_1p=sobolev_norm(v, 1, p),
                v_2p=sobolev_norm(v, 2, p),
                grad_rho_1p=sobolev_norm(gradient(rho), 1, p),
                rho_min=float(rho.values.min()),
                rho_max=float(rho.values.max()),
                div_sup=sup_norm(divergence(v)),
            )
        )
    return rows


def noise_norms(regime: Regime, p: float) -> NoiseNorms | None:
    """k-2 surrogate, C^2 and W^{2,p} norms per node of an additive run's noise."""
    if not isinstance(regime, AdditiveRegime):
        return None
    norms = q_wiener_norms(regime.noise_path, p)
    return NoiseNorms(k2=norms.k2.tolist(), c2=norms.c2.tolist(), w2p=norms.w2p.tolist())


def format_norms_csv(norms: list[NodeNorms], d_history: list[float]) -> str:
    """Per-node rows with 17 significant digits, then the d_k appendix."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(NORM_COLUMNS)
    for row in norms:
        writer.writerow([f"{getattr(row, c):.17g}" for c in NORM_COLUMNS])
    buffer.write("\n# d_k history\n")
    writer.writerow(["k", "d_k"])
    for k, d in enumerate(d_history, start=1):
        writer.writerow([k, f"{d:.17g}"])
    return buffer.getvalue()


def write_run(
    out_dir: Path,
    report: RunReport,
    state: IterationState,
    regime: Regime,
    rho0: ScalarField,
    v0: VectorField,
    cfg: RunConfig,
) -> None:
    out_dir.mkdir(parents=True, exist_ok=True)
    (out_dir / REPORT_FILE).write_text(report.model_dump_json(indent=2), encoding="utf-8")
    d_history = [r.d for r in report.solve.history]
    (out_dir / NORMS_FILE).write_text(format_norms_csv(report.norms, d_history), encoding="utf-8")
    (out_dir / CONFIG_FILE).write_text(format_config(cfg), encoding="utf-8")
    write_field(out_dir / RHO0_FILE, rho0)
    write_field(out_dir / V0_FILE, v0)
    for name, filename in SERIES_FILES.items():
        write_series(out_dir / filename, getattr(state, name))
    write_noise(out_dir / NOISE_FILE, regime.noise_path)


def execute(
    cfg: RunConfig, out_dir: Path, settings: Settings | None = None
) -> tuple[RunReport, int]:
    """Run one experiment and write its directory; returns the report and exit status.

    A Picard loop that hits k_max still writes its last iterate and history
    and returns status 2. Every other error propagates.
    """
    settings = settings or Settings()
    out_dir = Path(out_dir)
    logger.info("Run start: regime=%s n=%d N_t=%d", cfg.regime, cfg.n_per_axis, cfg.n_steps)

    regime = build_regime(cfg)
    rho0, v0 = initial_conditions(cfg)
    status = EXIT_OK
    try:
        state, solve = run_regime(cfg, regime, rho0, v0, settings)
    except NoConvergenceError as e:
        if e.partial is None:
            raise
        state, solve = e.partial
        status = EXIT_NO_CONVERGENCE
        logger.warning("Picard loop stopped without convergence: %s", e)

    used = regime.truncate(state.v.n_nodes)
    report = build_report(cfg, settings, solve, state, used)
    write_run(out_dir, report, state, used, rho0, v0, cfg)
    logger.info("Run written to %s (status %d)", out_dir, status)
    return report, status


def build_report(
    cfg: RunConfig,
    settings: Settings,
    solve: SolveReport,
    state: IterationState,
    regime: Regime,
) -> RunReport:
    tau = solve.stopping_time.tau if solve.stopping_time is not None else None
    return RunReport(
        format=settings.report_format,
        version=__version__,
        domain=domain_tag(cfg),
        config=cfg.model_dump(mode="json"),
        warnings=cfg.warnings,
        seed=cfg.seed,
        tau=tau,
        solve=solve,
        norms=node_norms(state, regime, cfg.p),
        threads=settings.worker_count,
        noise_norms=noise_norms(regime, cfg.p),
    )


def run(cfg: RunConfig, out_dir: Path, settings: Settings | None = None) -> int:
    """Exit status of one run: 0 converged, 2 no convergence, 1 any other failure."""
    try:
        _, status = execute(cfg, out_dir, settings)
    except (LabError, OSError) as e:
        logger.error("Run failed: %s", e)
        return EXIT_ERROR
    return status


def load_report(run_dir: Path) -> RunReport:
    text = (Path(run_dir) / REPORT_FILE).read_text(encoding="utf-8")
    return RunReport.model_validate_json(text)


def _t_grid(report: RunReport) -> FloatArray:
    return np.array([row.t for row in report.norms], dtype=np.float64)


def load_state(run_dir: Path, report: RunReport) -> IterationState:
    """The final iterate stored in a run directory."""
    run_dir = Path(run_dir)
    t = _t_grid(report)
    series = {name: read_series(run_dir / f, t) for name, f in SERIES_FILES.items()}
    history = report.solve.history
    diff = np.asarray(history[-1].diff_norms) if history else np.zeros(t.size)
    return IterationState(k=report.solve.iterations, diff_norms=diff, **series)


def verify(run_dir: Path) -> VerifyReport:
    """Re-run the bound, residual and Cauchy-decay checks on stored fields.

    Noise is regenerated from the seed. Only the bound checks decide ``passed``.
    """
    report = load_report(run_dir)
    cfg = RunConfig.model_validate(report.config)
    state = load_state(run_dir, report)
    regime = build_regime(cfg).truncate(state.v.n_nodes)
    rho0 = read_field(Path(run_dir) / RHO0_FILE)
    if not isinstance(rho0, ScalarField):
        raise LabError(f"{run_dir}: {RHO0_FILE} does not hold a scalar field")
    bounds = verify_bounds(state, regime, rho0, cfg, report.solve.A, report.solve.A_declared)
    residuals = check_spde_residual(state, regime)
    convergence = monitor_convergence(report.solve.history)
    logger.info(
        "Verify %s: bounds passed=%s, Cauchy decay passed=%s",
        run_dir,
        bounds.passed,
        convergence.passed,
    )
    return VerifyReport(
        bounds=bounds, residuals=residuals, convergence=convergence, passed=bounds.passed
    )


def _grid_header(path: Path) -> FieldHeader:
    header, _ = read_array(path)
    return header.model_copy(update={"time_index": 0})


def compare_runs(dir_a: Path, dir_b: Path) -> CompareReport:
    """Sup-over-nodes L2 and W^{1,p} differences of every stored series.

    Raises:
        ShapeMismatchError: if the grids or time grids differ
    """
    report_a, report_b = load_report(dir_a), load_report(dir_b)
    t_a, t_b = _t_grid(report_a), _t_grid(report_b)
    if t_a.shape != t_b.shape or not np.array_equal(t_a, t_b):
        raise ShapeMismatchError(
            f"time grids differ: {t_a.size} nodes to {t_a[-1]:.6g} vs {t_b.size} to {t_b[-1]:.6g}"
        )
    p = float(report_a.config["p"])
    fields: dict[str, FieldDifference] = {}
    for name, filename in SERIES_FILES.items():
        path_a, path_b = Path(dir_a) / filename, Path(dir_b) / filename
        if _grid_header(path_a) != _grid_header(path_b):
            raise ShapeMismatchError(f"{filename}: grids differ")
        a, b = read_series(path_a, t_a), read_series(path_b, t_b)
        diff = TimeSeriesField(a.grid, t_a, a.data - b.data, a.kind)
        fields[name] = FieldDifference(
            l2=float(series_l2(diff).max()), w1p=float(series_norms(diff, 1, p).max())
        )
    return CompareReport(p=p, fields=fields, max_l2=max(f.l2 for f in fields.values()))
