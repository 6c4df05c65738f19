"""Geometric heuristics for axis and legend detection.

An axis reads as the largest run of collinear labels sitting outside the mark
region, with short tick lines and an optional spanning axis line nearby. A
legend is either a run of [small mark, text] pairs or a gradient bar with
numeric labels. Heuristics here are deliberately tunable; detection mistakes
are recoverable through corrections.
"""

from __future__ import annotations

import math
import re
from typing import Optional, Sequence

from ..config import DEFAULT_CONFIG, Config
from ..geometry import Box
from ..ingest.scene import KIND_LINE, KIND_RECT, KIND_TEXT, NormalizedScene, SceneElement
from .model import (
    CATEGORICAL,
    CONTINUOUS,
    DATE,
    DISCRETE,
    NONE,
    QUANTITATIVE,
    AxisModel,
    DecorationModel,
    LegendModel,
    TierLabel,
)

_MONTHS = {
    "jan", "feb", "mar", "apr", "may", "jun", "jul", "aug", "sep", "oct", "nov", "dec",
    "january", "february", "march", "april", "june", "july", "august",
    "september", "october", "november", "december",
}

_DATE_PATTERNS = (
    ("iso", re.compile(r"\d{4}-\d{2}(-\d{2})?$")),
    ("year", re.compile(r"[12]\d{3}$")),
    ("mdy", re.compile(r"\d{1,2}/\d{1,2}/\d{4}$")),
)


def _is_month(label: str) -> bool:
    return label.strip().rstrip(".").lower() in _MONTHS


def _numeric(label: str) -> Optional[float]:
    try:
        return float(label.strip().replace(",", ""))
    except ValueError:
        return None


def infer_field_type(labels: Sequence[str]) -> str:
    """Quantitative when everything parses numeric, Date when one date pattern
    covers every label (months and bare years included), else Categorical."""
    if not labels:
        raise ValueError("infer_field_type needs at least one label")
    cleaned = [l.strip() for l in labels]
    for _, pattern in _DATE_PATTERNS:
        if all(pattern.fullmatch(l) for l in cleaned):
            return DATE
    if all(_is_month(l) for l in cleaned):
        return DATE
    if all(_numeric(l) is not None for l in cleaned):
        return QUANTITATIVE
    return CATEGORICAL


def _rect_region(scene: NormalizedScene) -> Optional[Box]:
    rects = scene.rects()
    if not rects:
        return None
    return (
        min(r.bbox[0] for r in rects), min(r.bbox[1] for r in rects),
        max(r.bbox[2] for r in rects), max(r.bbox[3] for r in rects),
    )


def _cluster_rows(texts: list[SceneElement], key, tol: float) -> list[list[SceneElement]]:
    """Greedy 1-d clustering over sorted key values."""
    if not texts:
        return []
    ordered = sorted(texts, key=key)
    rows = [[ordered[0]]]
    for t in ordered[1:]:
        if key(t) - key(rows[-1][-1]) <= tol:
            rows[-1].append(t)
        else:
            rows.append([t])
    return rows


def _anchor_of(el: SceneElement, orientation: str) -> float:
    if orientation == "X":
        b = el.bbox
        return (b[0] + b[2]) / 2
    # text y is the baseline; ticks and grid lines sit at the optical center
    fs = float(el.style.get("font-size", "12") or 12)
    return el.y - 0.35 * fs


def _line_length(el: SceneElement) -> float:
    return math.hypot(el.x2 - el.x1, el.y2 - el.y1)


def _detect_one_axis(scene: NormalizedScene, orientation: str, config: Config,
                     excluded: set[int], region: Optional[Box] = None) -> Optional[AxisModel]:
    texts = [t for t in scene.texts() if t.id not in excluded and t.content.strip()]
    if region is not None:
        rx0, ry0, rx1, ry1 = region
        texts = [t for t in texts if rx0 <= t.x <= rx1 and ry0 <= t.y <= ry1]
    if not texts:
        return None
    plot = _rect_region(scene)

    if orientation == "X":
        rows = _cluster_rows(texts, key=lambda t: t.y, tol=config.collinear_tol)
        if region is None and plot is not None:
            below = [r for r in rows if _row_pos(r, "X") >= plot[3] - config.collinear_tol]
            above = [r for r in rows if _row_pos(r, "X") <= plot[1] + config.collinear_tol]
            rows = below or above
    else:
        rows = _cluster_rows(texts, key=lambda t: t.x, tol=config.collinear_tol)
        if region is None and plot is not None:
            left = [r for r in rows if _row_pos(r, "Y") <= plot[0] + config.collinear_tol]
            right = [r for r in rows if _row_pos(r, "Y") >= plot[2] - config.collinear_tol]
            rows = left or right
    rows = [r for r in rows if len(r) >= 2]
    if not rows:
        return None

    rows.sort(key=lambda r: (-len(r), _distance_to_plot(r, orientation, plot)))
    tier0 = rows[0]
    axis = AxisModel(orientation=orientation)
    axis.tiers.append(_tier_of(tier0, orientation))

    # Higher-level tiers: farther collinear rows whose count divides tier 0's.
    t0_pos = _row_pos(tier0, orientation)
    outward = 1.0 if (plot is None or t0_pos >= _plot_mid(plot, orientation)) else -1.0
    for row in rows[1:]:
        pos = _row_pos(row, orientation)
        if (pos - t0_pos) * outward <= 0:
            continue
        if len(tier0) % len(row) == 0 and 2 <= len(row) < len(tier0):
            axis.tiers.append(_tier_of(row, orientation))

    claimed_text = {l.element_id for tier in axis.tiers for l in tier}
    _attach_lines(scene, axis, excluded | claimed_text, config)
    finalize_axis(axis)
    return axis


def _plot_mid(plot: Box, orientation: str) -> float:
    return (plot[1] + plot[3]) / 2 if orientation == "X" else (plot[0] + plot[2]) / 2


def _row_pos(row: list[SceneElement], orientation: str) -> float:
    vals = [t.y for t in row] if orientation == "X" else [t.x for t in row]
    return sum(vals) / len(vals)


def _distance_to_plot(row, orientation, plot) -> float:
    if plot is None:
        return 0.0
    pos = _row_pos(row, orientation)
    if orientation == "X":
        return min(abs(pos - plot[3]), abs(pos - plot[1]))
    return min(abs(pos - plot[0]), abs(pos - plot[2]))


def _tier_of(row: list[SceneElement], orientation: str) -> list[TierLabel]:
    tier = [TierLabel(t.id, t.content, _anchor_of(t, orientation)) for t in row]
    tier.sort(key=lambda l: l.anchor)
    return tier


def _attach_lines(scene: NormalizedScene, axis: AxisModel, excluded: set[int],
                  config: Config) -> None:
    tier0 = axis.tiers[0]
    anchors = [(l.anchor, l.element_id) for l in tier0]
    label_pos = {l.element_id: scene.by_id(l.element_id) for l in tier0}
    for line in scene.lines():
        if line.id in excluded:
            continue
        length = _line_length(line)
        mid = ((line.x1 + line.x2) / 2, (line.y1 + line.y2) / 2)
        if length <= config.tick_len_max:
            near = any(
                math.hypot(mid[0] - el.x, mid[1] - el.y) <= config.tick_pair_radius
                or math.hypot(mid[0] - (el.bbox[0] + el.bbox[2]) / 2,
                              mid[1] - (el.bbox[1] + el.bbox[3]) / 2) <= config.tick_pair_radius
                for el in label_pos.values()
            )
            if near:
                axis.tick_ids.append(line.id)
        elif axis.axis_line_id is None:
            extent = max(a for a, _ in anchors) - min(a for a, _ in anchors)
            if extent <= 0:
                continue
            if axis.orientation == "X" and abs(line.y1 - line.y2) <= 1.0:
                span = abs(line.x2 - line.x1)
                near_row = abs(mid[1] - _row_pos(list(label_pos.values()), "X")) <= 3 * config.tick_pair_radius
                if span >= config.axis_line_span * extent and near_row:
                    axis.axis_line_id = line.id
            elif axis.orientation == "Y" and abs(line.x1 - line.x2) <= 1.0:
                span = abs(line.y2 - line.y1)
                near_row = abs(mid[0] - _row_pos(list(label_pos.values()), "Y")) <= 3 * config.tick_pair_radius
                if span >= config.axis_line_span * extent and near_row:
                    axis.axis_line_id = line.id


def finalize_axis(axis: AxisModel) -> None:
    """Recompute tier ordering, field types and ranges after any mutation."""
    axis.tiers = [sorted(tier, key=lambda l: l.anchor) for tier in axis.tiers]
    while len(axis.field_type_overrides) < len(axis.tiers):
        axis.field_type_overrides.append(None)
    axis.field_type_overrides = axis.field_type_overrides[: len(axis.tiers)]
    axis.field_types = []
    for tier, override in zip(axis.tiers, axis.field_type_overrides):
        if override is not None:
            axis.field_types.append(override)
        elif tier:
            axis.field_types.append(infer_field_type([l.text for l in tier]))
        else:
            axis.field_types.append(CATEGORICAL)
    anchors = [l.anchor for l in axis.tiers[0]] if axis.tiers and axis.tiers[0] else []
    axis.pixel_range = (min(anchors), max(anchors)) if anchors else (0.0, 0.0)
    axis.numeric_domain = None
    if axis.field_types and axis.field_types[0] == QUANTITATIVE and axis.tiers[0]:
        parsed = [_numeric(l.text) for l in axis.tiers[0]]
        vals = [v for v in parsed if v is not None]
        if len(vals) >= 2:
            axis.numeric_domain = (min(vals), max(vals))


def detect_axes(scene: NormalizedScene, config: Config = DEFAULT_CONFIG,
                excluded: Optional[set[int]] = None
                ) -> tuple[Optional[AxisModel], Optional[AxisModel]]:
    """X and Y axis candidates; absence is None, never an error."""
    excluded = set(excluded or ())
    x_axis = _detect_one_axis(scene, "X", config, excluded)
    if x_axis is not None:
        excluded = excluded | x_axis.claimed_ids()
    y_axis = _detect_one_axis(scene, "Y", config, excluded)
    return x_axis, y_axis


def detect_axis_in_region(scene: NormalizedScene, orientation: str, region: Box,
                          config: Config = DEFAULT_CONFIG,
                          excluded: Optional[set[int]] = None) -> Optional[AxisModel]:
    return _detect_one_axis(scene, orientation, config, set(excluded or ()), region=region)


def detect_legend(scene: NormalizedScene, config: Config = DEFAULT_CONFIG,
                  excluded: Optional[set[int]] = None) -> LegendModel:
    """Discrete mark/text pairs, continuous gradient bar, or none."""
    excluded = set(excluded or ())
    vx, vy, vw, vh = scene.view_box
    max_area = config.legend_mark_area_fraction * vw * vh

    # Continuous: gradient-filled rect next to numeric labels.
    for rect in scene.rects():
        if rect.id in excluded or "gradient-stops" not in rect.style:
            continue
        ticks = []
        ids = [rect.id]
        for t in scene.texts():
            if t.id in excluded:
                continue
            d = _box_distance(rect.bbox, t.bbox)
            v = _numeric(t.content)
            if d <= 15.0 and v is not None:
                ticks.append(v)
                ids.append(t.id)
        if len(ticks) >= 2:
            stops = []
            for part in rect.style["gradient-stops"].split(";"):
                off, color = part.split(":")
                stops.append((float(off), color))
            return LegendModel(kind=CONTINUOUS, gradient_stops=stops,
                               tick_values=sorted(ticks), entry_ids=ids,
                               region=rect.bbox)

    # Discrete: small marks each paired with one text at a consistent offset.
    # Chart segments can pair with nearby labels by accident, so the legend is
    # the best consistent run, not the set of all pairs.
    marks = [r for r in scene.rects()
             if r.id not in excluded and r.width * r.height <= max_area]
    pairs = []
    used_text: set[int] = set()
    for mark in marks:
        best = None
        for t in scene.texts():
            if t.id in excluded or t.id in used_text or not t.content.strip():
                continue
            dy = abs((t.bbox[1] + t.bbox[3]) / 2 - (mark.bbox[1] + mark.bbox[3]) / 2)
            dx = t.bbox[0] - mark.bbox[2]
            if dy <= max(mark.height, 12.0) and 0 <= dx <= 20.0:
                if best is None or dx < best[0]:
                    best = (dx, t)
        if best is not None:
            pairs.append((mark, best[1], best[0]))
            used_text.add(best[1].id)

    best_run: list = []
    for axis in ("x", "y"):
        key = (lambda p: p[0].x) if axis == "x" else (lambda p: p[0].y)
        for cluster in _cluster_rows(pairs, key=key, tol=config.collinear_tol):  # type: ignore[arg-type]
            if len(cluster) < 2 or len(cluster) <= len(best_run):
                continue
            offsets = [p[2] for p in cluster]
            widths = [p[0].width for p in cluster]
            heights = [p[0].height for p in cluster]
            labels = [p[1].content for p in cluster]
            if max(offsets) - min(offsets) > 3.0:
                continue
            if max(widths) - min(widths) > 2.0 or max(heights) - min(heights) > 2.0:
                continue  # legend swatches are uniform
            if len(set(labels)) != len(labels):
                continue
            best_run = cluster
    if len(best_run) >= 2:
        best_run.sort(key=lambda p: (p[0].y, p[0].x))
        entries = [(p[1].content, p[0].style.get("fill", "#000000")) for p in best_run]
        ids = [p[0].id for p in best_run] + [p[1].id for p in best_run]
        boxes = [p[0].bbox for p in best_run] + [p[1].bbox for p in best_run]
        region = (min(b[0] for b in boxes), min(b[1] for b in boxes),
                  max(b[2] for b in boxes), max(b[3] for b in boxes))
        return LegendModel(kind=DISCRETE, entries=entries, entry_ids=ids, region=region)
    return LegendModel(kind=NONE)


def _box_distance(a: Box, b: Box) -> float:
    dx = max(a[0] - b[2], b[0] - a[2], 0.0)
    dy = max(a[1] - b[3], b[1] - a[3], 0.0)
    return math.hypot(dx, dy)


def detect_decorations(scene: NormalizedScene, config: Config = DEFAULT_CONFIG) -> DecorationModel:
    """Legend first (its label column would otherwise pass for an axis on
    axis-free charts), then both axes over the remaining elements."""
    legend = detect_legend(scene, config)
    x_axis, y_axis = detect_axes(scene, config, excluded=legend.claimed_ids())
    model = DecorationModel(x_axis=x_axis, y_axis=y_axis, legend=legend)
    model.validate()
    return model
