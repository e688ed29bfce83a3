"""Exact local constants of tame Galois extensions of p-adic fields."""

__version__ = "0.1.0"
