"""Tests for the binary field format."""

import json

import numpy as np
import pytest

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields import GridSpec, ScalarField, TimeSeriesField, VectorField
from stochastic_euler.fields.io import (
    read_array,
    read_field,
    read_series,
    write_field,
    write_series,
)


class TestFieldFiles:
    """Tests for write_field and read_field."""

    def test_scalar_bit_exact(self, tmp_path, smooth_density: ScalarField):
        write_field(tmp_path / "rho.bin", smooth_density)

        back = read_field(tmp_path / "rho.bin")

        assert isinstance(back, ScalarField)
        assert back.grid == smooth_density.grid
        assert np.array_equal(back.values, smooth_density.values)

    def test_vector_bit_exact(self, tmp_path, tg: VectorField):
        write_field(tmp_path / "v.bin", tg)

        back = read_field(tmp_path / "v.bin")

        assert isinstance(back, VectorField)
        assert np.array_equal(back.data, tg.data)

    def test_component_is_fastest_axis(self, tmp_path, grid: GridSpec):
        x, _ = grid.coordinates()
        v = VectorField(grid, np.stack([x, -x]))
        write_field(tmp_path / "v.bin", v)

        raw = np.fromfile(tmp_path / "v.bin", dtype="<f8")

        assert raw.size == 2 * grid.size
        assert raw[2] == 0.0
        assert raw[2 * 16] == x[1, 0]
        assert raw[2 * 16 + 1] == -x[1, 0]

    def test_sidecar_header(self, tmp_path, tg: VectorField):
        write_field(tmp_path / "v.bin", tg, time_index=3)

        header = json.loads((tmp_path / "v.bin.json").read_text())

        assert header["kind"] == "vector"
        assert header["components"] == 2
        assert header["time_index"] == 3

    def test_truncated_file(self, tmp_path, tg: VectorField):
        path = tmp_path / "v.bin"
        write_field(path, tg)
        path.write_bytes(path.read_bytes()[:-8])

        with pytest.raises(ValidationError, match="do not match"):
            read_array(path)


class TestSeriesFiles:
    """Tests for write_series and read_series."""

    def test_vector_series(self, tmp_path, tg_flow: TimeSeriesField):
        write_series(tmp_path / "v.bin", tg_flow)

        back = read_series(tmp_path / "v.bin", tg_flow.t_grid)

        assert back.kind == "vector"
        assert back.n_nodes == 5
        assert np.array_equal(back.data, tg_flow.data)

    def test_q_wiener_tag(self, tmp_path, tg_flow: TimeSeriesField):
        write_series(tmp_path / "noise.bin", tg_flow, kind="q_wiener")

        header, _ = read_array(tmp_path / "noise.bin")
        back = read_series(tmp_path / "noise.bin", tg_flow.t_grid)

        assert header.kind == "q_wiener"
        assert back.kind == "vector"

    def test_scalar_series(self, tmp_path, smooth_density: ScalarField, t_grid):
        series = TimeSeriesField.constant_in_time(t_grid, smooth_density)
        write_series(tmp_path / "rho.bin", series)

        back = read_series(tmp_path / "rho.bin", t_grid)

        assert back.kind == "scalar"
        assert np.array_equal(back.data, series.data)
