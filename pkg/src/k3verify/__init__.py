"""Exact verification toolkit for two K3 surfaces, their automorphism groups and lattices."""

__version__ = "0.1.0"
