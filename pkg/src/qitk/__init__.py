"""Desk-scale quantum information toolkit."""

__version__ = "0.1.0"
