"""Exact computations with finite-dimensional Nichols algebras and their approximations."""

__version__ = "0.1.0"
