"""Numerical laboratory for the stochastic inhomogeneous incompressible Euler equations."""

__version__ = "0.1.0"
