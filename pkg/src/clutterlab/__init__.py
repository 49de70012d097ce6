"""Clutters, blockers, idealness and binary-matroid machinery with exact arithmetic."""

__version__ = "0.1.0"
