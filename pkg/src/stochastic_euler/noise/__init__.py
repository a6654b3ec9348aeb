"""Reproducible Brownian and Q-Wiener noise, and the Stratonovich reduction check."""

from stochastic_euler.noise.brownian import (
    BrownianPath,
    ExpFactor,
    exp_factor,
    sample_brownian,
    uniform_time_grid,
)
from stochastic_euler.noise.q_wiener import (
    QWienerNorms,
    QWienerPath,
    basis_modes,
    mode_budget,
    q_wiener_norms,
    sample_q_wiener,
    zero_q_wiener,
)
from stochastic_euler.noise.rng import counter_normals
from stochastic_euler.noise.storage import read_brownian, write_noise
from stochastic_euler.noise.stratonovich import (
    euler_maruyama_ito,
    heun,
    stratonovich_convergence,
    verify_stratonovich_reduction,
)

__all__ = [
    "BrownianPath",
    "ExpFactor",
    "QWienerNorms",
    "QWienerPath",
    "basis_modes",
    "counter_normals",
    "euler_maruyama_ito",
    "exp_factor",
    "heun",
    "mode_budget",
    "q_wiener_norms",
    "read_brownian",
    "sample_brownian",
    "sample_q_wiener",
    "stratonovich_convergence",
    "uniform_time_grid",
    "verify_stratonovich_reduction",
    "write_noise",
    "zero_q_wiener",
]
