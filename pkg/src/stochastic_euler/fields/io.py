"""Shared binary field format: little-endian float64 plus a JSON sidecar header.

The byte stream of a file is the C-order flattening of an array indexed
[frame, i_1, ..., i_dim, component]; single fields are written as one frame.
"""

from __future__ import annotations

from pathlib import Path
from typing import Literal

import numpy as np
from pydantic import BaseModel

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.grid import (
    FloatArray,
    GridSpec,
    ScalarField,
    TimeSeriesField,
    VectorField,
)

DTYPE = np.dtype("<f8")


class FieldHeader(BaseModel):
    """Sidecar JSON header of a binary field file."""

    kind: Literal["scalar", "vector", "brownian", "q_wiener"] = "scalar"
    dim: int
    n_per_axis: int
    length: float
    components: int
    time_index: int = 0
    frames: int = 1


def _sidecar(path: Path) -> Path:
    return path.with_suffix(path.suffix + ".json")


def write_array(path: Path, header: FieldHeader, data: FloatArray) -> None:
    """Write raw frames (frames, *shape, components) and the sidecar header."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    np.ascontiguousarray(data, dtype=DTYPE).tofile(path)
    _sidecar(path).write_text(header.model_dump_json(indent=2), encoding="utf-8")


def read_array(path: Path) -> tuple[FieldHeader, FloatArray]:
    path = Path(path)
    header = FieldHeader.model_validate_json(_sidecar(path).read_text(encoding="utf-8"))
    raw = np.fromfile(path, dtype=DTYPE)
    shape = (header.frames, *((header.n_per_axis,) * header.dim), header.components)
    if raw.size != int(np.prod(shape)):
        raise ValidationError(f"{path}: {raw.size} values do not match header shape {shape}")
    return header, raw.reshape(shape).astype(np.float64)


def _to_layout(frames: FloatArray, vector: bool) -> FloatArray:
    # (frames, [dim,] *shape) -> (frames, *shape, components)
    if vector:
        return np.moveaxis(frames, 1, -1)
    return frames[..., np.newaxis]


def _from_layout(data: FloatArray, vector: bool) -> FloatArray:
    if vector:
        return np.moveaxis(data, -1, 1)
    return data[..., 0]


def write_field(path: Path, f: ScalarField | VectorField, time_index: int = 0) -> None:
    vector = isinstance(f, VectorField)
    frames = (f.data if isinstance(f, VectorField) else f.values)[np.newaxis]
    header = FieldHeader(
        kind="vector" if vector else "scalar",
        dim=f.grid.dim,
        n_per_axis=f.grid.n_per_axis,
        length=f.grid.length,
        components=f.grid.dim if vector else 1,
        time_index=time_index,
    )
    write_array(path, header, _to_layout(frames, vector))


def read_field(path: Path) -> ScalarField | VectorField:
    header, data = read_array(path)
    grid = GridSpec(dim=header.dim, n_per_axis=header.n_per_axis, length=header.length)
    if header.kind == "vector":
        return VectorField(grid, _from_layout(data, True)[0])
    return ScalarField(grid, _from_layout(data, False)[0])


def write_series(
    path: Path, series: TimeSeriesField, kind: Literal["q_wiener"] | None = None
) -> None:
    """Write every frame of a series; ``kind="q_wiener"`` tags a noise path."""
    vector = series.kind == "vector"
    header = FieldHeader(
        kind=kind or series.kind,
        dim=series.grid.dim,
        n_per_axis=series.grid.n_per_axis,
        length=series.grid.length,
        components=series.components,
        frames=series.n_nodes,
    )
    write_array(path, header, _to_layout(series.data, vector))


def read_series(path: Path, t_grid: FloatArray) -> TimeSeriesField:
    header, data = read_array(path)
    grid = GridSpec(dim=header.dim, n_per_axis=header.n_per_axis, length=header.length)
    vector = header.kind in ("vector", "q_wiener")
    return TimeSeriesField(
        grid, t_grid, _from_layout(data, vector), "vector" if vector else "scalar"
    )
