"""Quantum phase-space states at a variable Planck parameter eta."""

__version__ = "0.1.0"
