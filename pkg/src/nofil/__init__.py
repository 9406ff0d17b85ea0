"""Embedding graphs in Steiner triple systems through the game Nofil."""

__version__ = "0.1.0"
