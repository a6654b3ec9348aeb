"""Common validators used across the project."""

from stochastic_euler.exceptions import ValidationError


class ValidGridSize:
    """Validator for grid points per axis (power of two, at least 8)."""

    MINIMUM = 8

    @classmethod
    def validate(cls, n: int) -> int:
        """Validate and return the grid size, or raise ValidationError."""
        if n < cls.MINIMUM or n & (n - 1) != 0:
            raise ValidationError(
                f"Invalid n_per_axis {n}. Must be a power of two and at least {cls.MINIMUM}"
            )
        return n


class ValidDimension:
    """Validator for the spatial dimension of the torus."""

    ALLOWED = {2, 3}

    @classmethod
    def validate(cls, dim: int) -> int:
        """Validate and return the dimension, or raise ValidationError."""
        if dim not in cls.ALLOWED:
            allowed = ", ".join(str(d) for d in sorted(cls.ALLOWED))
            raise ValidationError(f"Invalid dim {dim}. Allowed: {allowed}")
        return dim


class ValidExponent:
    """Validator for Lebesgue exponents."""

    @classmethod
    def validate(cls, p: float) -> float:
        """Validate and return p > 1, or raise ValidationError."""
        if not p > 1.0 or p == float("inf"):
            raise ValidationError(f"Invalid exponent p={p}. Must be finite and > 1")
        return p


class ValidSplineOrder:
    """Validator for periodic spline interpolation orders."""

    ALLOWED = {3, 5}

    @classmethod
    def validate(cls, order: int) -> int:
        """Validate and return the spline order, or raise ValidationError."""
        if order not in cls.ALLOWED:
            allowed = ", ".join(str(o) for o in sorted(cls.ALLOWED))
            raise ValidationError(f"Invalid spline order {order}. Allowed: {allowed}")
        return order
