"""Speyer g-polynomials of matroids and graphs."""

__version__ = "0.1.0"
