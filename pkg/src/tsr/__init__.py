"""Surreal/transseries resummation toolkit."""

__version__ = "0.1.0"
