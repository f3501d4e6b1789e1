"""Exact cores, Shapley values and blocking witnesses for approval committee games."""

__version__ = "0.1.0"
