"""Grid, stack and packing placement.

These are the inverse of the relation detection step: descriptors extracted
from an example chart drive the placement of freshly instantiated children.
"""

from __future__ import annotations

from ..geometry import Box

GRAVITY_NONE = None


def layout_stack(frame: Box, flow_sizes: list[float], category: str,
                 gap: float = 0.0) -> list[Box]:
    """Contiguous placement along the stack orientation.

    ``flow_sizes`` are extents along the flow axis; every child spans the
    frame's full cross extent.
    """
    x0, y0, x1, y1 = frame
    boxes: list[Box] = []
    if category == "VStack":
        cur = y0
        for s in flow_sizes:
            boxes.append((x0, cur, x1, cur + s))
            cur += s + gap
    elif category == "HStack":
        cur = x0
        for s in flow_sizes:
            boxes.append((cur, y0, cur + s, y1))
            cur += s + gap
    else:
        raise ValueError(f"not a stack category: {category}")
    return boxes


def _anchor(child: float, cell0: float, cell1: float, gravity: str) -> float:
    """Offset of a child extent inside a cell interval for one axis."""
    if gravity in ("Top", "Left"):
        return cell0
    if gravity in ("Bottom", "Right"):
        return cell1 - child
    if gravity in ("CenterV", "CenterH"):
        return (cell0 + cell1 - child) / 2
    return cell0  # no gravity recorded: keep children flush with the cell start


def layout_grid(frame: Box, child_sizes: list[tuple[float, float]], rows: int, cols: int,
                gap_x: float = 0.0, gap_y: float = 0.0, gravity: str | None = None) -> list[Box]:
    """Row-major grid placement with per-column widths and per-row heights.

    Gravity anchors each child inside its cell; cells in a single-row grid
    span the frame's full height (and symmetrically for one column).
    """
    n = len(child_sizes)
    if rows * cols < n:
        raise ValueError("grid rows*cols smaller than child count")
    col_w = [0.0] * cols
    row_h = [0.0] * rows
    for k, (w, h) in enumerate(child_sizes):
        r, c = divmod(k, cols)
        col_w[c] = max(col_w[c], w)
        row_h[r] = max(row_h[r], h)
    x0, y0, x1, y1 = frame
    if rows == 1:
        row_h[0] = y1 - y0
    if cols == 1:
        col_w[0] = x1 - x0
    col_x = [x0]
    for c in range(1, cols):
        col_x.append(col_x[-1] + col_w[c - 1] + gap_x)
    row_y = [y0]
    for r in range(1, rows):
        row_y.append(row_y[-1] + row_h[r - 1] + gap_y)

    boxes: list[Box] = []
    gv = gravity or ""
    for k, (w, h) in enumerate(child_sizes):
        r, c = divmod(k, cols)
        cx = _anchor(w, col_x[c], col_x[c] + col_w[c], gv if gv in ("Left", "Right", "CenterH") else "")
        cy = _anchor(h, row_y[r], row_y[r] + row_h[r], gv if gv in ("Top", "Bottom", "CenterV") else "")
        boxes.append((cx, cy, cx + w, cy + h))
    return boxes


def _worst_ratio(row: list[float], side: float) -> float:
    total = sum(row)
    if total <= 0 or side <= 0:
        return float("inf")
    worst = 0.0
    for a in row:
        w = total / side
        h = a / w
        worst = max(worst, w / h if w > h else h / w)
    return worst


def squarify(areas: list[float], frame: Box) -> list[Box]:
    """Squarified treemap: greedy row building minimizing the worst aspect ratio.

    Areas are normalized to fill the frame exactly; boxes come back in input
    order.
    """
    total = sum(areas)
    fx0, fy0, fx1, fy1 = frame
    frame_area = (fx1 - fx0) * (fy1 - fy0)
    if total <= 0 or frame_area <= 0:
        raise ValueError("squarify needs positive areas and a non-empty frame")
    scale = frame_area / total
    order = sorted(range(len(areas)), key=lambda i: -areas[i])
    scaled = [areas[i] * scale for i in order]

    boxes_by_rank: list[Box] = [None] * len(areas)  # type: ignore[list-item]

    def place_row(row: list[float], ranks: list[int], rect: Box) -> Box:
        rx0, ry0, rx1, ry1 = rect
        rw, rh = rx1 - rx0, ry1 - ry0
        total_row = sum(row)
        if rw >= rh:  # lay the row along the left edge
            row_w = total_row / rh if rh > 0 else 0.0
            y = ry0
            for a, rank in zip(row, ranks):
                h = a / row_w if row_w > 0 else 0.0
                boxes_by_rank[rank] = (rx0, y, rx0 + row_w, y + h)
                y += h
            return (rx0 + row_w, ry0, rx1, ry1)
        row_h = total_row / rw if rw > 0 else 0.0
        x = rx0
        for a, rank in zip(row, ranks):
            w = a / row_h if row_h > 0 else 0.0
            boxes_by_rank[rank] = (x, ry0, x + w, ry0 + row_h)
            x += w
        return (rx0, ry0 + row_h, rx1, ry1)

    rect: Box = frame
    row: list[float] = []
    ranks: list[int] = []
    i = 0
    while i < len(scaled):
        side = min(rect[2] - rect[0], rect[3] - rect[1])
        a = scaled[i]
        if not row or _worst_ratio(row + [a], side) < _worst_ratio(row, side):
            row.append(a)
            ranks.append(order[i])
            i += 1
        else:
            rect = place_row(row, ranks, rect)
            row, ranks = [], []
    if row:
        place_row(row, ranks, rect)
    return boxes_by_rank  # type: ignore[return-value]


def layout_pack(frame: Box, child_areas: list[float], gap: float = 0.0) -> list[Box]:
    """Squarified packing with a uniform gap between neighboring children.

    Interior cell edges are inset by half the gap from each side; edges flush
    with the frame stay flush, so the children's hull equals the frame.
    """
    raw = squarify(child_areas, frame)
    if gap <= 0:
        return raw
    inset = gap / 2.0
    fx0, fy0, fx1, fy1 = frame
    eps = 1e-6
    out = []
    for (x0, y0, x1, y1) in raw:
        nx0 = x0 + (inset if x0 > fx0 + eps else 0.0)
        ny0 = y0 + (inset if y0 > fy0 + eps else 0.0)
        nx1 = x1 - (inset if x1 < fx1 - eps else 0.0)
        ny1 = y1 - (inset if y1 < fy1 - eps else 0.0)
        out.append((nx0, ny0, max(nx0, nx1), max(ny0, ny1)))
    return out
