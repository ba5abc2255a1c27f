"""Exact homology of relations, covers, cosheaves and profunctors."""

__version__ = "0.1.0"
