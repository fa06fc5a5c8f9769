"""Certified bounds on Shannon OR-capacity of graphs and categorical products."""

__version__ = "0.1.0"
