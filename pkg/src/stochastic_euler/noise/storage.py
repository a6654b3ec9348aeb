"""Noise paths in the shared binary format.

A Brownian path is stored as one (t, W) pair per node. A Q-Wiener path is
stored as its field frames. Both can be regenerated from the run seed, so the
files are for inspection and external tooling.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from stochastic_euler.exceptions import ValidationError
from stochastic_euler.fields.io import FieldHeader, read_array, write_array, write_series
from stochastic_euler.noise.brownian import BrownianPath
from stochastic_euler.noise.q_wiener import QWienerPath


def write_noise(path: Path, noise: BrownianPath | QWienerPath) -> None:
    if isinstance(noise, QWienerPath):
        write_series(path, noise.frames, kind="q_wiener")
        return
    header = FieldHeader(
        kind="brownian",
        dim=0,
        n_per_axis=1,
        length=noise.t_run,
        components=2,
        frames=noise.t_grid.size,
    )
    write_array(path, header, np.stack([noise.t_grid, noise.w], axis=-1))


def read_brownian(path: Path, seed: int = 0) -> BrownianPath:
    header, data = read_array(path)
    if header.kind != "brownian":
        raise ValidationError(f"{path} holds a {header.kind} file, not a Brownian path")
    return BrownianPath(data[:, 0], data[:, 1], seed)
