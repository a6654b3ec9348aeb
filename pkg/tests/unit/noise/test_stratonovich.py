"""Tests for the Stratonovich reduction check."""

import numpy as np
import pytest

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.noise import (
    BrownianPath,
    euler_maruyama_ito,
    heun,
    sample_brownian,
    stratonovich_convergence,
    verify_stratonovich_reduction,
)


class TestSchemes:
    """Tests for heun and euler_maruyama_ito."""

    def test_zero_path_is_constant(self):
        path = BrownianPath.zero(1.0, 8)

        assert np.all(heun(2.0, path) == 2.0)
        # Ito drift v/2 alone: v0 (1 + dt / 2)^n
        expected = 2.0 * 1.0625 ** np.arange(9)
        np.testing.assert_allclose(euler_maruyama_ito(2.0, path), expected, rtol=1e-14)

    def test_heun_one_step(self):
        path = BrownianPath(np.array([0.0, 1.0]), np.array([0.0, 0.2]), 0)

        # v (1 - dW + dW^2 / 2)
        assert heun(1.0, path)[1] == pytest.approx(1.0 - 0.2 + 0.02)

    def test_heun_tracks_exact_solution(self):
        path = sample_brownian(1.0, 4096, seed=4)

        np.testing.assert_allclose(heun(1.0, path), np.exp(-path.w), rtol=5e-3)


class TestReports:
    """Tests for verify_stratonovich_reduction and stratonovich_convergence."""

    def test_zero_path_report(self):
        report = verify_stratonovich_reduction(seed=0, n_steps=16, zero_path=True)

        assert report.heun_error == 0.0

    def test_heun_beats_ito_on_fine_grid(self):
        report = verify_stratonovich_reduction(seed=3, n_steps=2048)

        assert report.heun_error < report.ito_error

    def test_convergence_shapes(self):
        report = stratonovich_convergence(range(4), finest_steps=256, levels=3)

        assert report.paths == 4
        assert report.steps == [64, 128, 256]
        assert len(report.heun_ratios) == 2
        assert all(r > 1.0 for r in report.heun_ratios)

    def test_rejects_levels(self):
        with pytest.raises(ValidationError, match="levels"):
            stratonovich_convergence([0], levels=1)

    def test_rejects_indivisible(self):
        with pytest.raises(ValidationError, match="divisible"):
            stratonovich_convergence([0], finest_steps=100, levels=4)

    def test_rejects_no_seeds(self):
        with pytest.raises(ValidationError, match="at least one seed"):
            stratonovich_convergence([], finest_steps=16, levels=2)
