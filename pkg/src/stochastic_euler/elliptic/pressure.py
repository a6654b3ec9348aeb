"""Variable-coefficient pressure equation div(rho^-1 grad pi) = f on the torus."""

from __future__ import annotations

import logging
from typing import NamedTuple

import numpy as np
from scipy.sparse.linalg import LinearOperator, cg

from stochastic_euler.exceptions import (
    IncompatibleRHSError,
    NoConvergenceError,
    NonPositiveDensityError,
)
from stochastic_euler.fields.grid import FloatArray, GridSpec, ScalarField, VectorField
from stochastic_euler.fields.spectral import (
    dealiased_product,
    divergence_array,
    forward,
    gradient_array,
    inverse,
    inverse_laplacian_symbol,
    jacobian_array,
    laplacian_symbol,
)
from stochastic_euler.models.config import EllipticConfig
from stochastic_euler.models.reports import PressureStats

logger = logging.getLogger(__name__)

# |mean f| above this fraction of rms(f) is not a round-off artifact
COMPATIBILITY_TOL = 1e-8


class PressureSolution(NamedTuple):
    pi: ScalarField
    grad_pi: VectorField
    stats: PressureStats


def _range_projection(values: FloatArray, grid: GridSpec) -> FloatArray:
    """Drop the modes the discrete operator annihilates (mean and Nyquist lines)."""
    mask = laplacian_symbol(grid) > 0
    return inverse(mask * forward(values, grid), grid)


def pressure_operator(rho: ScalarField) -> LinearOperator:
    """A pi = -div(rho^-1 grad pi) on flattened arrays; symmetric positive semidefinite."""
    grid = rho.grid
    inv_rho = 1.0 / rho.values

    def apply(x: FloatArray) -> FloatArray:
        pi = np.asarray(x, dtype=np.float64).reshape(grid.shape)
        flux = inv_rho * gradient_array(pi, grid)
        return -divergence_array(flux, grid).ravel()

    return LinearOperator((grid.size, grid.size), matvec=apply, rmatvec=apply, dtype=np.float64)


def _preconditioner(rho: ScalarField) -> LinearOperator:
    # exact inverse of the operator with rho replaced by its mean
    grid = rho.grid
    rho_bar = float(rho.values.mean())
    symbol = rho_bar * inverse_laplacian_symbol(grid)

    def apply(x: FloatArray) -> FloatArray:
        r = np.asarray(x, dtype=np.float64).reshape(grid.shape)
        return inverse(symbol * forward(r, grid), grid).ravel()

    return LinearOperator((grid.size, grid.size), matvec=apply, dtype=np.float64)


def solve_pressure(
    rho: ScalarField, f: ScalarField, config: EllipticConfig = EllipticConfig()
) -> PressureSolution:
    """Mean-zero pi with div(rho^-1 grad pi) = f, by preconditioned conjugate gradients."""
    grid = rho.grid
    rho_min = float(rho.values.min())
    if rho_min <= 0.0:
        raise NonPositiveDensityError(rho_min)

    mean = float(f.values.mean())
    rms = float(np.sqrt(np.mean(f.values**2)))
    if abs(mean) > COMPATIBILITY_TOL * rms:
        raise IncompatibleRHSError(mean, rms)

    b = -_range_projection(f.values, grid).ravel()
    b_norm = float(np.linalg.norm(b))
    if b_norm == 0.0:
        stats = PressureStats(iterations=0, residual=0.0, rhs_mean=mean)
        return PressureSolution(ScalarField.zeros(grid), VectorField.zeros(grid), stats)

    operator = pressure_operator(rho)
    iterations = 0

    def count(_: FloatArray) -> None:
        nonlocal iterations
        iterations += 1

    x, info = cg(
        operator,
        b,
        rtol=config.rel_tol,
        atol=0.0,
        maxiter=config.max_iter,
        M=_preconditioner(rho),
        callback=count,
    )
    residual = float(np.linalg.norm(operator.matvec(x) - b)) / b_norm
    if info != 0 and residual > config.rel_tol:
        raise NoConvergenceError(
            f"pressure CG stopped after {iterations} iterations at relative residual "
            f"{residual:.3e} > {config.rel_tol:.1e}",
            residual=residual,
        )
    logger.debug("Pressure CG: %d iterations, residual %.3e", iterations, residual)

    pi = _range_projection(x.reshape(grid.shape), grid)
    stats = PressureStats(iterations=iterations, residual=residual, rhs_mean=mean)
    grad_pi = VectorField(grid, gradient_array(pi, grid))
    return PressureSolution(ScalarField(grid, pi), grad_pi, stats)


def pressure_rhs(v: VectorField, z_inv_sq: float) -> tuple[ScalarField, float]:
    """-z^-2 sum_ij d_j v^i d_i v^j with dealiased products, and its pre-projection mean."""
    grid = v.grid
    jac = jacobian_array(v.data, grid)
    total = np.zeros(grid.shape)
    for i in range(grid.dim):
        for j in range(grid.dim):
            total += dealiased_product(jac[i, j], jac[j, i], grid)
    values = -z_inv_sq * total
    mean = float(values.mean())
    if mean != 0.0:
        logger.debug("Pressure right-hand side mean %.3e projected out", mean)
    return ScalarField(grid, values - mean), mean


def assemble_pressure_rhs_multiplicative(v_tilde: VectorField, z_inv_sq: float) -> ScalarField:
    """Right-hand side -z^-2 sum_ij d_j v~^i d_i v~^j, mean projected to zero."""
    return pressure_rhs(v_tilde, z_inv_sq)[0]


def assemble_pressure_rhs_additive(v: VectorField) -> ScalarField:
    return assemble_pressure_rhs_multiplicative(v, 1.0)
