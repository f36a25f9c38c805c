"""Desk-scale numerics for spectral geometry on large hyperbolic surfaces."""

__version__ = "0.1.0"
