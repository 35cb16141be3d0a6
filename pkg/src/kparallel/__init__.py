"""Disjoint spread families in finite Grassmannians, with exhaustive verification."""

__version__ = "0.1.0"
