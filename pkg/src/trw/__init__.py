"""Exact-arithmetic toolkit for power-sum witnesses of totally real unit families."""

__version__ = "0.1.0"
