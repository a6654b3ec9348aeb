"""Counter-based normal draws.

Draw i of stream s under seed k is a Box-Muller transform of the Philox block
with key (k, s) and counter i, so it never depends on how many other draws were
taken before it or in which order streams are generated.
"""

from __future__ import annotations

import numpy as np

from stochastic_euler.fields.grid import FloatArray

_MASK64 = (1 << 64) - 1
_TWO_POW_53 = float(2**53)


def _bit_generator(seed: int, stream: int, start: int) -> np.random.Philox:
    key = np.array([seed & _MASK64, stream & _MASK64], dtype=np.uint64)
    counter = np.array([start & _MASK64, 0, 0, 0], dtype=np.uint64)
    return np.random.Philox(key=key, counter=counter)


def counter_normals(seed: int, stream: int, start: int, count: int) -> FloatArray:
    """Standard normal draws start .. start+count-1 of one (seed, stream)."""
    if count <= 0:
        return np.zeros(0)
    raw = _bit_generator(seed, stream, start).random_raw(4 * count).reshape(count, 4)
    u1 = ((raw[:, 0] >> np.uint64(11)).astype(np.float64) + 1.0) / _TWO_POW_53
    u2 = (raw[:, 1] >> np.uint64(11)).astype(np.float64) / _TWO_POW_53
    return np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
