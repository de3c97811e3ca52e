"""Exact computations for polynomial distributions and foliations on projective space."""

__version__ = "0.1.0"
