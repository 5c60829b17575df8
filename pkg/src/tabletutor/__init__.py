"""Situated interactive task learning: table-top agent kernel and harness."""

__version__ = "0.1.0"
