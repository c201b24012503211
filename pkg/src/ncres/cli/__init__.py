"""Command-line interface and builtin scenarios."""

from .main import main

__all__ = ["main"]
