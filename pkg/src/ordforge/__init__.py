"""Ordinal notations, arithmetized truth theories and a small proof kernel."""

__version__ = "0.1.0"
