"""Constructive 2-adjacency of 2-bridge knots via B3 words."""

__version__ = "0.1.0"
