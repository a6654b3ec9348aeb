"""Test suite for stochastic_euler."""
