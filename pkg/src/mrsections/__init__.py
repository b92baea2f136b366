"""Finite-field verification of maximal-rank statements for hyperplane and quadric sections."""

__version__ = "0.1.0"
