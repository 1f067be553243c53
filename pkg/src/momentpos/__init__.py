"""Exact decision procedures for positivity of matrix moment sequences."""

__version__ = "0.1.0"
