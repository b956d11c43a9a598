"""Exact computation in the algebraic closure of a valued field."""

__version__ = "0.1.0"
