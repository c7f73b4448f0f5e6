"""Twisted Alexander vanishing workbench."""

__version__ = "0.1.0"
