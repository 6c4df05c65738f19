"""Axis-aligned box arithmetic used throughout the pipeline.

Boxes are (x0, y0, x1, y1) tuples in SVG pixel coordinates (y grows down).
"""

from __future__ import annotations

Box = tuple[float, float, float, float]

# Interval penetration below this is treated as touching, not overlap.
# Covers coordinate rounding in exported SVGs (two-decimal tools drift
# up to ~0.015 px per edge).
EPS_PEN = 0.05


def interval_sep(a0: float, a1: float, b0: float, b1: float) -> float:
    """Signed separation of two intervals: >0 gap, 0 touching, <0 overlap depth."""
    return max(a0, b0) - min(a1, b1)


def boxes_overlap(a: Box, b: Box, tol: float = EPS_PEN) -> bool:
    """Strict interior intersection; shared edges do not count."""
    return (
        interval_sep(a[0], a[2], b[0], b[2]) < -tol
        and interval_sep(a[1], a[3], b[1], b[3]) < -tol
    )


def box_union(a: Box, b: Box) -> Box:
    return (min(a[0], b[0]), min(a[1], b[1]), max(a[2], b[2]), max(a[3], b[3]))


def box_area(a: Box) -> float:
    return max(0.0, a[2] - a[0]) * max(0.0, a[3] - a[1])


def nearest_edge_gap(a: Box, b: Box) -> float:
    """Gap between nearest edges of two disjoint boxes (0 if they touch or overlap)."""
    sx = interval_sep(a[0], a[2], b[0], b[2])
    sy = interval_sep(a[1], a[3], b[1], b[3])
    return max(sx, sy, 0.0)


def union_all(boxes: list[Box]) -> Box:
    x0 = min(b[0] for b in boxes)
    y0 = min(b[1] for b in boxes)
    x1 = max(b[2] for b in boxes)
    y1 = max(b[3] for b in boxes)
    return (x0, y0, x1, y1)
