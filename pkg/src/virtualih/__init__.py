"""Combinatorial intersection cohomology of polyhedral fans over exact fields."""

__version__ = "0.1.0"
