"""Run configuration models."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Literal

from pydantic import BaseModel, ConfigDict, field_validator, model_validator

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.models.common import (
    ValidDimension,
    ValidExponent,
    ValidGridSize,
    ValidSplineOrder,
)

Regime = Literal["multiplicative", "additive", "deterministic"]
HorizonMode = Literal["auto", "stopping_time", "fixed"]
InitialCondition = Literal["taylor_green", "gaussian_density_blob", "from_file"]
InitialIterate = Literal["zero", "projected_v0"]


class EllipticConfig(BaseModel):
    """Conjugate-gradient controls for the pressure solve."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    rel_tol: float = 1e-10
    max_iter: int = 500

    @field_validator("rel_tol")
    @classmethod
    def _check_tol(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValidationError(f"Invalid elliptic rel_tol {v}. Must be in (0, 1)")
        return v

    @field_validator("max_iter")
    @classmethod
    def _check_iter(cls, v: int) -> int:
        if v < 1:
            raise ValidationError(f"Invalid elliptic max_iter {v}. Must be >= 1")
        return v


class TransportConfig(BaseModel):
    """Characteristic integration and range/bound tolerances."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    integrator_substeps: int = 2
    spline_order: int = 3
    div_tol: float = 1e-8
    overshoot_factor: float = 10.0
    bound_slack: float = 0.05

    @field_validator("integrator_substeps")
    @classmethod
    def _check_substeps(cls, v: int) -> int:
        if v < 1:
            raise ValidationError(f"Invalid integrator_substeps {v}. Must be >= 1")
        return v

    @field_validator("spline_order")
    @classmethod
    def _check_order(cls, v: int) -> int:
        return ValidSplineOrder.validate(v)

    @field_validator("div_tol", "overshoot_factor", "bound_slack")
    @classmethod
    def _check_nonnegative(cls, v: float) -> float:
        if not (v >= 0.0 and math.isfinite(v)):
            raise ValidationError(f"Invalid tolerance {v}. Must be finite and >= 0")
        return v


class QWienerSpec(BaseModel):
    """Eigen-structure of the divergence-free Q-Wiener noise."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    mode_count: int = 8
    decay_exponent: float = 4.0
    smoothness_k: float = 3.0
    variance_scale: float = 1.0

    @field_validator("mode_count")
    @classmethod
    def _check_modes(cls, v: int) -> int:
        if v < 1:
            raise ValidationError(f"Invalid mode_count {v}. Must be >= 1")
        return v

    @field_validator("decay_exponent")
    @classmethod
    def _check_decay(cls, v: float) -> float:
        if not v > 1.0:
            raise ValidationError(
                f"Invalid decay_exponent {v}. Must exceed 1 so the covariance is trace class"
            )
        return v

    @field_validator("smoothness_k")
    @classmethod
    def _check_k(cls, v: float) -> float:
        if not v >= 0.0:
            raise ValidationError(f"Invalid smoothness_k {v}. Must be >= 0")
        return v

    @field_validator("variance_scale")
    @classmethod
    def _check_scale(cls, v: float) -> float:
        if not (v > 0.0 and math.isfinite(v)):
            raise ValidationError(f"Invalid variance_scale {v}. Must be finite and positive")
        return v


class RunConfig(BaseModel):
    """Complete, reproducible description of one experiment.

    Every field is a flat scalar so the key=value text format maps one line per
    field. ``A = None`` means the ball radius is derived from the initial data
    and containment is reported rather than asserted.
    """

    model_config = ConfigDict(frozen=True, extra="forbid")

    regime: Regime = "deterministic"
    dim: int = 2
    n_per_axis: int = 64
    length: float = 2.0 * math.pi
    n_steps: int = 64
    t_horizon: float = 0.1
    p: float = 4.0
    picard_tol: float = 1e-8
    k_max: int = 30
    A: float | None = None
    seed: int = 0

    q_modes: int = 8
    q_decay: float = 4.0
    q_smoothness: float = 3.0
    q_scale: float = 1.0

    elliptic_rel_tol: float = 1e-10
    elliptic_max_iter: int = 500

    integrator_substeps: int = 2
    spline_order: int = 3
    div_tol: float = 1e-8
    overshoot_factor: float = 10.0
    bound_slack: float = 0.05

    c1: float = 1.0
    c2: float = 1.0
    c3: float = 1.0

    zero_noise: bool = False
    horizon_mode: HorizonMode = "auto"
    initial_iterate: InitialIterate = "zero"

    initial_condition: InitialCondition = "taylor_green"
    initial_file: Path | None = None
    velocity_amplitude: float = 1.0
    density_min: float = 1.0
    density_max: float = 2.0
    blob_concentration: float = 2.0

    @field_validator("dim")
    @classmethod
    def _check_dim(cls, v: int) -> int:
        return ValidDimension.validate(v)

    @field_validator("n_per_axis")
    @classmethod
    def _check_n(cls, v: int) -> int:
        return ValidGridSize.validate(v)

    @field_validator("p")
    @classmethod
    def _check_p(cls, v: float) -> float:
        return ValidExponent.validate(v)

    @field_validator("spline_order")
    @classmethod
    def _check_order(cls, v: int) -> int:
        return ValidSplineOrder.validate(v)

    @field_validator("n_steps", "k_max", "q_modes", "elliptic_max_iter", "integrator_substeps")
    @classmethod
    def _check_positive_int(cls, v: int) -> int:
        if v < 1:
            raise ValidationError(f"Invalid count {v}. Must be >= 1")
        return v

    @field_validator("elliptic_rel_tol")
    @classmethod
    def _check_rel_tol(cls, v: float) -> float:
        if not 0.0 < v < 1.0:
            raise ValidationError(f"Invalid elliptic_rel_tol {v}. Must be in (0, 1)")
        return v

    @field_validator("q_decay")
    @classmethod
    def _check_decay(cls, v: float) -> float:
        if not v > 1.0:
            raise ValidationError(
                f"Invalid q_decay {v}. Must exceed 1 so the covariance is trace class"
            )
        return v

    @field_validator("div_tol", "overshoot_factor", "bound_slack", "q_smoothness")
    @classmethod
    def _check_nonnegative(cls, v: float) -> float:
        if not (v >= 0.0 and math.isfinite(v)):
            raise ValidationError(f"Invalid value {v}. Must be finite and >= 0")
        return v

    @field_validator(
        "length", "t_horizon", "picard_tol", "density_min", "blob_concentration", "q_scale"
    )
    @classmethod
    def _check_positive(cls, v: float) -> float:
        if not (v > 0.0 and math.isfinite(v)):
            raise ValidationError(f"Invalid value {v}. Must be finite and positive")
        return v

    @field_validator("A")
    @classmethod
    def _check_radius(cls, v: float | None) -> float | None:
        if v is not None and not v > 1.0:
            raise ValidationError(f"Invalid ball radius A={v}. Must exceed 1")
        return v

    @field_validator("seed")
    @classmethod
    def _check_seed(cls, v: int) -> int:
        if not 0 <= v < 2**64:
            raise ValidationError(f"Invalid seed {v}. Must be a 64-bit unsigned integer")
        return v

    @model_validator(mode="after")
    def _check_consistency(self) -> RunConfig:
        if self.density_max < self.density_min:
            raise ValidationError(
                f"density_max {self.density_max} is below density_min {self.density_min}"
            )
        if self.initial_condition == "from_file" and self.initial_file is None:
            raise ValidationError("initial_condition=from_file needs initial_file")
        return self

    @property
    def elliptic(self) -> EllipticConfig:
        return EllipticConfig(rel_tol=self.elliptic_rel_tol, max_iter=self.elliptic_max_iter)

    @property
    def transport(self) -> TransportConfig:
        return TransportConfig(
            integrator_substeps=self.integrator_substeps,
            spline_order=self.spline_order,
            div_tol=self.div_tol,
            overshoot_factor=self.overshoot_factor,
            bound_slack=self.bound_slack,
        )

    @property
    def q_spec(self) -> QWienerSpec:
        return QWienerSpec(
            mode_count=self.q_modes,
            decay_exponent=self.q_decay,
            smoothness_k=self.q_smoothness,
            variance_scale=self.q_scale,
        )

    @property
    def resolved_horizon_mode(self) -> Literal["stopping_time", "fixed"]:
        if self.horizon_mode == "auto":
            return "fixed" if self.regime == "deterministic" else "stopping_time"
        return self.horizon_mode

    @property
    def warnings(self) -> list[str]:
        """Hypotheses of the existence theory that this configuration leaves."""
        out = []
        if self.p <= 3.0:
            out.append(f"p={self.p} is outside 3 < p < inf")
        if self.regime == "additive" and self.q_smoothness <= 2.5:
            out.append(f"q_smoothness={self.q_smoothness} is not above 5/2")
        return out
