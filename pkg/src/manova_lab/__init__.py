"""Exact and Monte Carlo tools for the MANOVA spectral law of products of projections."""

__version__ = "0.1.0"
