"""qpsurf.cli: command-line interface for qpsurf."""

from qpsurf.cli._main import main

__all__ = ("main",)
