"""Workbench for randomized greedy matching in the query-commit model."""

__version__ = "0.1.0"
