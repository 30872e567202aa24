"""Preparata / Nordstrom-Robinson code toolkit."""

__version__ = "0.1.0"
