"""Numerical laboratory for discrete groups acting on products of two hyperbolic planes."""

__version__ = "0.1.0"
