"""Exact bounds for dimensions of singularity categories of isolated singularities."""

__version__ = "0.1.0"
