"""Unit tests for stochastic_euler."""
