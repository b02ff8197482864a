"""CLI package for eigentope.

Provides the `cli` group expected by the package entry point.
"""

__all__ = ["cli"]
