"""Exact computer algebra for double shuffle equations with poles."""

__version__ = "0.1.0"
