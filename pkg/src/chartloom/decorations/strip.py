"""Remove decorations so only the chart content remains for deconstruction."""

from __future__ import annotations

from ..config import DEFAULT_CONFIG, Config
from ..errors import EmptyScene
from ..ingest.scene import KIND_LINE, KIND_RECT, KIND_TEXT, NormalizedScene
from .model import DecorationModel


def strip_decorations(scene: NormalizedScene, model: DecorationModel,
                      config: Config = DEFAULT_CONFIG) -> NormalizedScene:
    """Scene minus decoration elements, grid lines and all remaining text.

    Grid lines are long lines aligned with tick anchors spanning most of the
    plot; leftover short lines (connectors, annotations) are kept but ignored
    by the rectangle deconstruction. Raises EmptyScene when no rects remain.
    """
    claimed = model.claimed_ids()
    rects = [r for r in scene.rects() if r.id not in claimed]
    if rects:
        plot = (
            min(r.bbox[0] for r in rects), min(r.bbox[1] for r in rects),
            max(r.bbox[2] for r in rects), max(r.bbox[3] for r in rects),
        )
    else:
        plot = scene.view_box[0], scene.view_box[1], \
            scene.view_box[0] + scene.view_box[2], scene.view_box[1] + scene.view_box[3]

    y_anchors = []
    x_anchors = []
    if model.y_axis is not None and model.y_axis.tiers:
        y_anchors = [l.anchor for l in model.y_axis.tiers[0]]
    if model.x_axis is not None and model.x_axis.tiers:
        x_anchors = [l.anchor for l in model.x_axis.tiers[0]]

    def is_grid_line(el) -> bool:
        if el.kind != KIND_LINE:
            return False
        horizontal = abs(el.y1 - el.y2) <= 1.0
        vertical = abs(el.x1 - el.x2) <= 1.0
        if horizontal:
            span_ok = abs(el.x2 - el.x1) >= config.grid_line_span * (plot[2] - plot[0])
            aligned = any(abs(el.y1 - a) <= config.collinear_tol for a in y_anchors)
            return span_ok and aligned
        if vertical:
            span_ok = abs(el.y2 - el.y1) >= config.grid_line_span * (plot[3] - plot[1])
            aligned = any(abs(el.x1 - a) <= config.collinear_tol for a in x_anchors)
            return span_ok and aligned
        return False

    kept = []
    for el in scene.elements:
        if el.id in claimed or el.kind == KIND_TEXT or is_grid_line(el):
            continue
        kept.append(el)
    if not any(e.kind == KIND_RECT for e in kept):
        raise EmptyScene("no rectangles remain after stripping decorations")
    return scene.reindexed(kept)
