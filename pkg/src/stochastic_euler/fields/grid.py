"""Periodic tensor-product grid and the sampled fields that live on it."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, field_validator

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.models.common import ValidDimension, ValidGridSize

FloatArray = NDArray[np.float64]


class GridSpec(BaseModel):
    """Periodic grid on the torus [0, length)^dim."""

    model_config = ConfigDict(frozen=True)

    dim: int = 2
    n_per_axis: int = 64
    length: float = 2.0 * math.pi

    @field_validator("dim")
    @classmethod
    def _check_dim(cls, v: int) -> int:
        return ValidDimension.validate(v)

    @field_validator("n_per_axis")
    @classmethod
    def _check_n(cls, v: int) -> int:
        return ValidGridSize.validate(v)

    @field_validator("length")
    @classmethod
    def _check_length(cls, v: float) -> float:
        if not (v > 0 and math.isfinite(v)):
            raise ValidationError(f"Invalid length {v}. Must be finite and positive")
        return v

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n_per_axis,) * self.dim

    @property
    def size(self) -> int:
        return self.n_per_axis**self.dim

    @property
    def spacing(self) -> float:
        """Grid spacing h."""
        return self.length / self.n_per_axis

    @property
    def volume(self) -> float:
        return self.length**self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    def coordinates(self) -> tuple[FloatArray, ...]:
        """Nodal coordinates x_i, one broadcast array per axis."""
        axis = np.arange(self.n_per_axis, dtype=np.float64) * self.spacing
        return tuple(np.meshgrid(*([axis] * self.dim), indexing="ij"))

    def index_coordinates(self) -> FloatArray:
        """Grid-index coordinates of every node, shape (dim, size)."""
        axis = np.arange(self.n_per_axis, dtype=np.float64)
        mesh = np.meshgrid(*([axis] * self.dim), indexing="ij")
        return np.stack([m.ravel() for m in mesh])


def _frozen(values: object, shape: tuple[int, ...]) -> FloatArray:
    arr = np.array(values, dtype=np.float64, copy=True)
    if arr.shape != shape:
        raise ValidationError(f"Expected array of shape {shape}, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValidationError("Field values must be finite")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class ScalarField:
    """Real samples of a scalar field at every grid node."""

    grid: GridSpec
    values: FloatArray

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", _frozen(self.values, self.grid.shape))

    @classmethod
    def zeros(cls, grid: GridSpec) -> ScalarField:
        return cls(grid, np.zeros(grid.shape))

    @classmethod
    def constant(cls, grid: GridSpec, c: float) -> ScalarField:
        return cls(grid, np.full(grid.shape, float(c)))

    def __mul__(self, alpha: float) -> ScalarField:
        return ScalarField(self.grid, alpha * self.values)

    __rmul__ = __mul__

    def __add__(self, other: ScalarField) -> ScalarField:
        return ScalarField(self.grid, self.values + other.values)

    def __sub__(self, other: ScalarField) -> ScalarField:
        return ScalarField(self.grid, self.values - other.values)


@dataclass(frozen=True, eq=False)
class VectorField:
    """A dim-component vector field stored as one (dim, *shape) array."""

    grid: GridSpec
    data: FloatArray

    def __post_init__(self) -> None:
        shape = (self.grid.dim, *self.grid.shape)
        object.__setattr__(self, "data", _frozen(self.data, shape))

    @classmethod
    def zeros(cls, grid: GridSpec) -> VectorField:
        return cls(grid, np.zeros((grid.dim, *grid.shape)))

    @classmethod
    def from_components(cls, components: list[ScalarField]) -> VectorField:
        grid = components[0].grid
        if any(c.grid != grid for c in components):
            raise ValidationError("All components must share one GridSpec")
        return cls(grid, np.stack([c.values for c in components]))

    @property
    def components(self) -> tuple[ScalarField, ...]:
        return tuple(ScalarField(self.grid, c) for c in self.data)

    def __mul__(self, alpha: float) -> VectorField:
        return VectorField(self.grid, alpha * self.data)

    __rmul__ = __mul__

    def __add__(self, other: VectorField) -> VectorField:
        return VectorField(self.grid, self.data + other.data)

    def __sub__(self, other: VectorField) -> VectorField:
        return VectorField(self.grid, self.data - other.data)


Field = ScalarField | VectorField


@dataclass(frozen=True, eq=False)
class TimeSeriesField:
    """A field-valued function on a uniform time grid.

    Frames are stored as one array of shape (N_t + 1, *frame_shape); ``kind``
    says whether each frame is a scalar or a vector field.
    """

    grid: GridSpec
    t_grid: FloatArray
    data: FloatArray
    kind: Literal["scalar", "vector"]

    def __post_init__(self) -> None:
        t = np.array(self.t_grid, dtype=np.float64, copy=True)
        if t.ndim != 1 or t.size < 1:
            raise ValidationError("t_grid must be a non-empty 1-d array")
        t.setflags(write=False)
        object.__setattr__(self, "t_grid", t)
        frame = self.grid.shape if self.kind == "scalar" else (self.grid.dim, *self.grid.shape)
        object.__setattr__(self, "data", _frozen(self.data, (t.size, *frame)))

    @classmethod
    def from_frames(
        cls, t_grid: FloatArray, frames: Sequence[ScalarField] | Sequence[VectorField]
    ) -> TimeSeriesField:
        if len(frames) != len(t_grid):
            raise ValidationError(f"{len(frames)} frames for {len(t_grid)} time nodes")
        grid = frames[0].grid
        if any(f.grid != grid for f in frames):
            raise ValidationError("All frames must share one GridSpec")
        vectors = [f.data for f in frames if isinstance(f, VectorField)]
        if vectors:
            return cls(grid, t_grid, np.stack(vectors), "vector")
        scalars = [f.values for f in frames if isinstance(f, ScalarField)]
        return cls(grid, t_grid, np.stack(scalars), "scalar")

    @classmethod
    def constant_in_time(cls, t_grid: FloatArray, frame: Field) -> TimeSeriesField:
        if isinstance(frame, VectorField):
            data = np.broadcast_to(frame.data, (len(t_grid), *frame.data.shape))
            return cls(frame.grid, t_grid, data, "vector")
        data = np.broadcast_to(frame.values, (len(t_grid), *frame.values.shape))
        return cls(frame.grid, t_grid, data, "scalar")

    @property
    def n_nodes(self) -> int:
        return int(self.t_grid.size)

    @property
    def components(self) -> int:
        return self.grid.dim if self.kind == "vector" else 1

    def frame(self, n: int) -> Field:
        if self.kind == "vector":
            return VectorField(self.grid, self.data[n])
        return ScalarField(self.grid, self.data[n])

    def scalar_frame(self, n: int) -> ScalarField:
        if self.kind != "scalar":
            raise ValidationError("series holds vector frames")
        return ScalarField(self.grid, self.data[n])

    def vector_frame(self, n: int) -> VectorField:
        if self.kind != "vector":
            raise ValidationError("series holds scalar frames")
        return VectorField(self.grid, self.data[n])

    @property
    def frames(self) -> list[Field]:
        return [self.frame(n) for n in range(self.n_nodes)]

    def truncate(self, n_nodes: int) -> TimeSeriesField:
        """Restrict to the first ``n_nodes`` time nodes."""
        return TimeSeriesField(self.grid, self.t_grid[:n_nodes], self.data[:n_nodes], self.kind)

    @cached_property
    def is_zero(self) -> bool:
        return not np.any(self.data)
