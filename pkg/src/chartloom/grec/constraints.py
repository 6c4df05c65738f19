"""Alignment constraints: inside glyphs, and data-anchored across collections."""

from __future__ import annotations

from ..config import DEFAULT_CONFIG, Config
from .model import (
    COLLECTION,
    GLYPH,
    GRIDS,
    HSTACK,
    STACKS,
    GraphicalConstraint,
    GroupNode,
)
from .encodings import _levels

_X_AXES = ("left", "centerX", "right")
_Y_AXES = ("top", "centerY", "bottom")


def _axis_value(box, axis: str) -> float:
    x0, y0, x1, y1 = box
    return {
        "left": x0, "right": x1, "centerX": (x0 + x1) / 2,
        "top": y0, "bottom": y1, "centerY": (y0 + y1) / 2,
    }[axis]


def _all_share(boxes, axis: str, tol: float) -> bool:
    vals = [_axis_value(b, axis) for b in boxes]
    return max(vals) - min(vals) <= tol


def detect_constraints(root: GroupNode, config: Config = DEFAULT_CONFIG) -> list[GraphicalConstraint]:
    tol = config.eps_align
    levels = _levels(root)
    out: list[GraphicalConstraint] = []

    # Glyph-internal alignment: axes shared by the members of every glyph.
    for depth, nodes in enumerate(levels):
        glyphs = [n for n in nodes if n.kind == GLYPH and len(n.children) >= 2]
        if not glyphs:
            continue
        axes = [
            axis for axis in _X_AXES + _Y_AXES
            if all(_all_share([m.bbox for m in g.children], axis, tol) for g in glyphs)
        ]
        if axes:
            out.append(GraphicalConstraint("GlyphAlign", axes=axes, level_depth=depth))
        break

    # Cross-collection anchors: stacks inside a gravity-free grid whose
    # same-colored segments line up. The concrete data anchor is the user's
    # call at reuse time; only the color and axes are recorded here.
    for depth, nodes in enumerate(levels):
        for node in nodes:
            rel = node.relationship
            if node.kind != COLLECTION or rel is None or rel.category not in GRIDS:
                continue
            if rel.gravity is not None or len(node.children) < 2:
                continue
            stacks = [c for c in node.children
                      if c.kind == COLLECTION and c.relationship
                      and c.relationship.category in STACKS]
            if len(stacks) != len(node.children):
                continue
            flow_axes = _X_AXES if stacks[0].relationship.category == HSTACK else _Y_AXES
            by_color: dict[str, list] = {}
            for s in stacks:
                for leaf in s.children:
                    f = leaf.fill()
                    if f:
                        by_color.setdefault(f, []).append(leaf.bbox)
            for color in sorted(by_color):
                boxes = by_color[color]
                if len(boxes) != len(stacks):
                    continue  # color must appear exactly once per stack
                axes = [a for a in flow_axes if _all_share(boxes, a, tol)]
                if axes:
                    out.append(GraphicalConstraint(
                        "CrossGroupAlign", axes=axes,
                        anchor_color=color, level_depth=depth + 1,
                    ))
    return out
