"""Symbolic checks of the Rokhlin property for big mapping class groups."""
__version__ = "0.1.0"
