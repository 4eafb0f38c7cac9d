"""Exact tools for plabic graphs, positroids, cluster seeds and square moves."""

__version__ = "0.1.0"
