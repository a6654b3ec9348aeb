"""Tests for shared validators."""

import pytest

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.models import ValidDimension, ValidExponent, ValidGridSize, ValidSplineOrder


class TestValidGridSize:
    """Tests for ValidGridSize."""

    @pytest.mark.parametrize("n", [8, 16, 64, 256])
    def test_powers_of_two(self, n):
        assert ValidGridSize.validate(n) == n

    @pytest.mark.parametrize("n", [48, 12, 4, 0])
    def test_rejects_others(self, n):
        with pytest.raises(ValidationError, match="power of two"):
            ValidGridSize.validate(n)


class TestValidDimension:
    """Tests for ValidDimension."""

    def test_allowed(self):
        assert ValidDimension.validate(2) == 2
        assert ValidDimension.validate(3) == 3

    def test_rejects_one(self):
        with pytest.raises(ValidationError, match="Allowed: 2, 3"):
            ValidDimension.validate(1)


class TestValidExponent:
    """Tests for ValidExponent."""

    def test_accepts_above_one(self):
        assert ValidExponent.validate(4.0) == 4.0

    @pytest.mark.parametrize("p", [1.0, 0.5, float("inf")])
    def test_rejects(self, p):
        with pytest.raises(ValidationError):
            ValidExponent.validate(p)


class TestValidSplineOrder:
    """Tests for ValidSplineOrder."""

    def test_cubic_and_quintic(self):
        assert ValidSplineOrder.validate(3) == 3
        assert ValidSplineOrder.validate(5) == 5

    def test_rejects_linear(self):
        with pytest.raises(ValidationError):
            ValidSplineOrder.validate(1)
