"""Computational toolkit for surface braid groups and Brunnian braids."""

__version__ = "0.1.0"
