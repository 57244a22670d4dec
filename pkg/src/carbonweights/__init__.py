"""Optimal carbon prices under alternative regional welfare weights."""

__version__ = "0.1.0"
