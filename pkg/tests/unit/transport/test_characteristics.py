"""Tests for semi-Lagrangian transport."""

import numpy as np
import pytest

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields import GridSpec, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.fields.norms import l2_norm
from stochastic_euler.models import TransportConfig
from stochastic_euler.noise import uniform_time_grid
from stochastic_euler.picard import taylor_green
from stochastic_euler.transport import (
    FlowMapSolve,
    advect_scalar,
    reverse_in_time,
    reversibility_error,
    solve_forced_velocity,
)


@pytest.fixture
def shear_flow(grid: GridSpec, t_grid: np.ndarray) -> TimeSeriesField:
    """Uniform translation a = (1, 0)."""
    data = np.zeros((grid.dim, *grid.shape))
    data[0] = 1.0
    return TimeSeriesField.constant_in_time(t_grid, VectorField(grid, data))


class TestFlowMapSolve:
    """Tests for FlowMapSolve validation."""

    def test_rejects_compressible_field(self, grid: GridSpec, t_grid):
        x, _ = grid.coordinates()
        a = VectorField(grid, np.stack([np.sin(x), np.zeros(grid.shape)]))

        with pytest.raises(ValidationError, match="not divergence-free at node 0"):
            FlowMapSolve(TimeSeriesField.constant_in_time(t_grid, a))

    def test_rejects_scalar_series(self, smooth_density: ScalarField, t_grid):
        with pytest.raises(ValidationError, match="vector"):
            FlowMapSolve(TimeSeriesField.constant_in_time(t_grid, smooth_density))

    def test_rejects_out_of_range_nodes(self, tg_flow, smooth_density):
        flow = FlowMapSolve(tg_flow)

        with pytest.raises(ValidationError, match="output nodes"):
            flow.trace(smooth_density.values[np.newaxis], out_nodes=[5])


class TestAdvectScalar:
    """Tests for advect_scalar."""

    def test_still_flow_is_identity(self, smooth_density, still_flow):
        rho = advect_scalar(smooth_density, still_flow)

        for n in range(rho.n_nodes):
            assert np.array_equal(rho.scalar_frame(n).values, smooth_density.values)

    def test_node_zero_is_initial_data(self, smooth_density, tg_flow):
        rho = advect_scalar(smooth_density, tg_flow)

        assert np.array_equal(rho.scalar_frame(0).values, smooth_density.values)

    def test_translation(self, grid: GridSpec, smooth_density, shear_flow, t_grid):
        rho = advect_scalar(smooth_density, shear_flow, config=TransportConfig(spline_order=5))

        x, _ = grid.coordinates()
        expected = 2.0 + np.cos(x - t_grid[4])
        np.testing.assert_allclose(rho.scalar_frame(4).values, expected, atol=1e-3)

    def test_out_nodes_subset(self, smooth_density, tg_flow):
        full = advect_scalar(smooth_density, tg_flow)
        part = advect_scalar(smooth_density, tg_flow, out_nodes=[4, 2])

        assert part.t_grid.tolist() == [tg_flow.t_grid[4], tg_flow.t_grid[2]]
        np.testing.assert_allclose(part.data[0], full.data[4], rtol=1e-14)
        np.testing.assert_allclose(part.data[1], full.data[2], rtol=1e-14)

    def test_cells_keep_streamline_density(self, grid: GridSpec, tg_flow):
        """A density constant on the streamlines of the rotating cells is stationary."""
        x, y = grid.coordinates()
        rho0 = ScalarField(grid, 2.0 + 0.5 * np.sin(x) * np.sin(y))

        rho = advect_scalar(rho0, tg_flow, config=TransportConfig(spline_order=5))

        for n in range(rho.n_nodes):
            np.testing.assert_allclose(rho.scalar_frame(n).values, rho0.values, atol=1e-4)

    def test_range_preserved(self, smooth_density, tg_flow):
        rho = advect_scalar(smooth_density, tg_flow)

        assert rho.data.min() > 1.0 - 1e-2
        assert rho.data.max() < 3.0 + 1e-2


class TestForcedVelocity:
    """Tests for solve_forced_velocity."""

    def test_constant_forcing_on_still_flow(self, tg: VectorField, still_flow, t_grid):
        forcing = TimeSeriesField.constant_in_time(t_grid, tg)

        u = solve_forced_velocity(tg, still_flow, forcing)

        for n, t in enumerate(t_grid):
            np.testing.assert_allclose(u.vector_frame(n).data, (1.0 + t) * tg.data, atol=1e-14)

    def test_zero_forcing_matches_transport(self, tg: VectorField, tg_flow, still_flow):
        u = solve_forced_velocity(tg, tg_flow, still_flow)

        component = advect_scalar(tg.components[0], tg_flow)
        np.testing.assert_allclose(u.data[:, 0], component.data, rtol=1e-14, atol=1e-15)

    def test_forcing_along_translation(self, grid: GridSpec, tg: VectorField, shear_flow, t_grid):
        """Spatially constant forcing integrates to t F whatever the flow."""
        ones = VectorField(grid, np.ones((grid.dim, *grid.shape)))
        forcing = TimeSeriesField.constant_in_time(t_grid, ones)
        zero = VectorField.zeros(grid)

        u = solve_forced_velocity(zero, shear_flow, forcing)

        np.testing.assert_allclose(u.vector_frame(4).data, t_grid[4], rtol=1e-12)


class TestReversibility:
    """Tests for reverse_in_time and reversibility_error."""

    def test_reverse(self, tg_flow):
        back = reverse_in_time(tg_flow)

        assert np.array_equal(back.data[0], -tg_flow.data[-1])

    def test_round_trip_small(self, smooth_density, tg_flow):
        error = reversibility_error(smooth_density, tg_flow, TransportConfig(spline_order=5))

        assert error < 1e-3 * l2_norm(smooth_density)

    def test_round_trip_error_order(self):
        """Forward-then-backward RK4 transport errs at fourth order in the step."""
        grid = GridSpec(n_per_axis=64)
        x, _ = grid.coordinates()
        rho0 = ScalarField(grid, 2.0 + np.cos(x))
        config = TransportConfig(spline_order=5, integrator_substeps=1)
        errors = []
        for n_steps in (2, 4, 8, 16):
            flow = TimeSeriesField.constant_in_time(
                uniform_time_grid(1.0, n_steps), taylor_green(grid)
            )
            errors.append(reversibility_error(rho0, flow, config))

        orders = np.log2(np.array(errors[:-1]) / np.array(errors[1:]))
        assert np.all(orders >= 3.0)
