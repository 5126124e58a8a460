"""Exact q-series toolkit for conjugacy growth series and their congruences."""

from .kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
