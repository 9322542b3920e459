"""Paperfolding curves and the coverings of the plane they form."""

__version__ = "0.1.0"
