"""Tests for the variable-coefficient pressure solve."""

import numpy as np
import pytest

from stochastic_euler.elliptic import (
    assemble_pressure_rhs_additive,
    assemble_pressure_rhs_multiplicative,
    pressure_operator,
    pressure_rhs,
    solve_pressure,
)
from stochastic_euler.exceptions import (
    IncompatibleRHSError,
    NoConvergenceError,
    NonPositiveDensityError,
)
from stochastic_euler.fields import GridSpec, ScalarField, VectorField, inverse_laplacian
from stochastic_euler.fields.norms import l2_inner, l2_norm
from stochastic_euler.models import EllipticConfig


@pytest.fixture
def layered_density(grid: GridSpec) -> ScalarField:
    _, y = grid.coordinates()
    return ScalarField(grid, 2.0 + np.cos(y))


def manufactured_rhs(rho: ScalarField, pi: np.ndarray) -> ScalarField:
    """f = div(rho^-1 grad pi) through the discrete operator itself."""
    return ScalarField(rho.grid, -pressure_operator(rho).matvec(pi.ravel()).reshape(pi.shape))


class TestSolvePressure:
    """Tests for solve_pressure."""

    def test_constant_density(self, grid: GridSpec):
        x, y = grid.coordinates()
        f = ScalarField(grid, np.sin(x) * np.cos(y))

        solution = solve_pressure(ScalarField.constant(grid, 2.0), f)

        # laplacian(pi) / 2 = f with laplacian = -2 on this mode
        np.testing.assert_allclose(solution.pi.values, -f.values, atol=1e-9)
        assert solution.stats.iterations <= 2

    def test_variable_density(self, grid: GridSpec, layered_density: ScalarField):
        x, y = grid.coordinates()
        pi_exact = np.sin(x) + 0.5 * np.cos(2 * y)

        solution = solve_pressure(layered_density, manufactured_rhs(layered_density, pi_exact))

        np.testing.assert_allclose(solution.pi.values, pi_exact, atol=1e-8)
        assert solution.stats.residual < 1e-9
        assert abs(solution.pi.values.mean()) < 1e-12

    def test_gradient_returned(self, grid: GridSpec, layered_density: ScalarField):
        x, _ = grid.coordinates()
        pi_exact = np.sin(x)

        solution = solve_pressure(layered_density, manufactured_rhs(layered_density, pi_exact))

        np.testing.assert_allclose(solution.grad_pi.data[0], np.cos(x), atol=1e-8)
        np.testing.assert_allclose(solution.grad_pi.data[1], 0.0, atol=1e-8)

    def test_zero_rhs(self, grid: GridSpec, layered_density: ScalarField):
        solution = solve_pressure(layered_density, ScalarField.zeros(grid))

        assert solution.stats.iterations == 0
        assert not np.any(solution.pi.values)

    def test_non_positive_density(self, grid: GridSpec):
        rho = ScalarField.constant(grid, 1.0) - ScalarField.constant(grid, 1.0)

        with pytest.raises(NonPositiveDensityError) as exc_info:
            solve_pressure(rho, ScalarField.zeros(grid))

        assert exc_info.value.min_density == 0.0

    def test_incompatible_rhs(self, grid: GridSpec):
        x, _ = grid.coordinates()
        f = ScalarField(grid, 1.0 + np.sin(x))

        with pytest.raises(IncompatibleRHSError):
            solve_pressure(ScalarField.constant(grid, 1.0), f)

    def test_iteration_cap(self, grid: GridSpec, layered_density: ScalarField):
        x, y = grid.coordinates()
        f = manufactured_rhs(layered_density, np.sin(x) * np.sin(y))

        with pytest.raises(NoConvergenceError, match="pressure CG") as exc_info:
            solve_pressure(layered_density, f, EllipticConfig(rel_tol=1e-12, max_iter=1))

        assert exc_info.value.residual > 1e-12


class TestPressureRhs:
    """Tests for the pressure right-hand sides."""

    def test_taylor_green(self, grid: GridSpec, tg: VectorField):
        x, y = grid.coordinates()

        f, mean = pressure_rhs(tg, 1.0)

        # sum_ij d_j v^i d_i v^j = cos 2x + cos 2y for the Taylor-Green cell
        np.testing.assert_allclose(f.values, -(np.cos(2 * x) + np.cos(2 * y)), atol=1e-13)
        assert abs(mean) < 1e-14

    def test_taylor_green_pressure(self, grid: GridSpec, tg: VectorField):
        x, y = grid.coordinates()
        f = assemble_pressure_rhs_additive(tg)

        solution = solve_pressure(ScalarField.constant(grid, 1.0), f)

        np.testing.assert_allclose(
            solution.pi.values, 0.25 * (np.cos(2 * x) + np.cos(2 * y)), atol=1e-9
        )

    def test_multiplicative_scaling(self, tg: VectorField):
        plain = assemble_pressure_rhs_additive(tg)
        scaled = assemble_pressure_rhs_multiplicative(tg, 0.25)

        np.testing.assert_allclose(scaled.values, 0.25 * plain.values, atol=1e-15)

    def test_result_has_zero_mean(self, grid: GridSpec):
        rng = np.random.default_rng(3)
        v = VectorField(grid, rng.standard_normal((2, *grid.shape)))

        f = assemble_pressure_rhs_additive(v)

        assert abs(f.values.mean()) < 1e-14 * (1.0 + np.abs(f.values).max())


class TestPressureOperator:
    """Structural properties of the discrete operator."""

    def test_symmetric(self, grid: GridSpec, layered_density: ScalarField):
        rng = np.random.default_rng(11)
        a = ScalarField(grid, rng.standard_normal(grid.shape))
        b = ScalarField(grid, rng.standard_normal(grid.shape))
        operator = pressure_operator(layered_density)

        a_image = ScalarField(grid, operator.matvec(a.values.ravel()).reshape(grid.shape))
        b_image = ScalarField(grid, operator.matvec(b.values.ravel()).reshape(grid.shape))

        lhs = l2_inner(a_image, b)
        rhs = l2_inner(a, b_image)
        assert abs(lhs - rhs) <= 1e-12 * l2_norm(a_image) * l2_norm(b)

    def test_positive_semidefinite(self, grid: GridSpec, layered_density: ScalarField):
        a = ScalarField(grid, np.random.default_rng(12).standard_normal(grid.shape))
        operator = pressure_operator(layered_density)

        image = ScalarField(grid, operator.matvec(a.values.ravel()).reshape(grid.shape))

        assert l2_inner(image, a) > 0.0

    @pytest.mark.parametrize("c", [0.5, 3.0])
    def test_constant_density_is_scaled_poisson(self, grid: GridSpec, c: float):
        x, y = grid.coordinates()
        f = ScalarField(grid, np.sin(x) * np.cos(2 * y) + 0.3 * np.cos(3 * x + y))
        config = EllipticConfig()

        solution = solve_pressure(ScalarField.constant(grid, c), f, config)

        expected = c * inverse_laplacian(f).values
        scale = float(np.abs(expected).max())
        np.testing.assert_allclose(solution.pi.values, expected, atol=config.rel_tol * scale)
