"""Exact analysis of periodic polygon colorings of the plane."""

__all__ = ["__version__"]

__version__ = "0.1.0"
