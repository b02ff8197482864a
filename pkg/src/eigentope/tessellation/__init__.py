"""Honeycomb conditions and statistics."""

from eigentope.tessellation.honeycomb import (
    honeycomb3_residual,
    mu5,
    solve_honeycomb3,
    star_transform,
    stats_report,
)

__all__ = ["honeycomb3_residual", "solve_honeycomb3", "mu5", "star_transform", "stats_report"]
