"""Subword units for translation between related languages."""

__version__ = "0.1.0"
