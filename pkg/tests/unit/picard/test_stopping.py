"""Tests for stopping times."""

import numpy as np
import pytest

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.noise import BrownianPath, exp_factor, sample_brownian, uniform_time_grid
from stochastic_euler.picard import (
    first_crossing,
    stopping_time_additive,
    stopping_time_multiplicative,
)


class TestFirstCrossing:
    """Tests for first_crossing."""

    def test_interpolated_crossing(self):
        t = np.array([0.0, 1.0, 2.0])

        result = first_crossing(np.array([0.0, 1.0, 3.0]), t, 2.0)

        assert result.tau == 2.0
        assert result.tau_node == 2
        assert result.crossing == pytest.approx(1.5)
        assert not result.capped

    def test_capped(self):
        t = np.array([0.0, 1.0, 2.0])

        result = first_crossing(np.array([0.0, 0.1, 0.2]), t, 1.0)

        assert result.capped
        assert result.tau == 2.0
        assert result.tau_node == 2

    def test_crossing_at_origin(self):
        result = first_crossing(np.array([5.0, 6.0]), np.array([0.0, 1.0]), 1.0)

        assert result.tau_node == 0
        assert result.crossing == 0.0


class TestMultiplicative:
    """Tests for stopping_time_multiplicative."""

    def test_zero_path(self):
        """W = 0: the integral is t, so tau = A^-2."""
        factor = exp_factor(BrownianPath.zero(1.0, 8))

        result = stopping_time_multiplicative(factor, 2.0)

        assert result.tau == 0.25
        assert result.tau_node == 2
        assert result.crossing == pytest.approx(0.25)
        assert result.threshold == 0.25

    def test_trace_is_integral_of_exp(self):
        path = sample_brownian(1.0, 64, seed=6)

        result = stopping_time_multiplicative(exp_factor(path), 1.5)

        trace = np.array(result.criterion_trace)
        assert trace[0] == 0.0
        assert np.all(np.diff(trace) > 0.0)

    def test_capped_horizon(self):
        factor = exp_factor(BrownianPath.zero(0.1, 4))

        result = stopping_time_multiplicative(factor, 2.0)

        assert result.capped
        assert result.tau == pytest.approx(0.1)

    def test_rejects_small_radius(self):
        with pytest.raises(ValidationError, match="radius"):
            stopping_time_multiplicative(exp_factor(BrownianPath.zero(1.0, 4)), 1.0)


class TestAdditive:
    """Tests for stopping_time_additive."""

    def test_zero_noise(self):
        """Zero noise: A^2 t reaches 1/3 at t = 1 / (3 A^2)."""
        t = uniform_time_grid(1.0, 10)

        result = stopping_time_additive(np.zeros(11), t, 2.0)

        assert result.tau == pytest.approx(0.1)
        assert result.crossing == pytest.approx(1.0 / 12.0)

    def test_constants_scale_drift(self):
        t = uniform_time_grid(1.0, 10)

        result = stopping_time_additive(np.zeros(11), t, 2.0, c1=2.0)

        assert result.criterion_trace[1] == pytest.approx(0.8)

    def test_noise_terms(self):
        t = uniform_time_grid(1.0, 4)
        norms = np.array([0.0, 1.0, 1.0, 1.0, 1.0])

        result = stopping_time_additive(norms, t, 10.0, c3=0.5)

        # 100 t + 0.5 e int ||W|| + 0.5 ||W|| / 10 at t = 0.25
        expected = 25.0 + 0.5 * np.e * 0.125 + 0.05
        assert result.criterion_trace[1] == pytest.approx(expected)
        assert result.tau_node == 1
