"""Geometry solver for bound chart trees.

Both the synthetic-chart generator and the template renderer describe a chart
as a BoundNode tree (relationship descriptors plus per-node sizes, areas or
absolute positions) and call solve() to obtain pixel boxes. Sharing this code
is what makes a re-render of a deconstructed chart land on the original
geometry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from ..geometry import Box
from .layouts import layout_grid, layout_pack, layout_stack

COLLECTION = "collection"
GLYPH = "glyph"
LEAF = "leaf"


@dataclass
class BoundNode:
    kind: str = LEAF
    category: Optional[str] = None        # HStack/VStack/HGrid/VGrid/Packing
    gap: float = 0.0
    gravity: Optional[str] = None
    children: list["BoundNode"] = field(default_factory=list)

    label: str = ""
    level_name: str = ""
    fill: str = "#4682b4"
    opacity: float = 1.0

    width: Optional[float] = None          # explicit extents
    height: Optional[float] = None
    area: Optional[float] = None           # packing share
    x: Optional[float] = None              # absolute position (data-encoded)
    y: Optional[float] = None
    top: Optional[float] = None            # absolute side overrides
    bottom: Optional[float] = None
    left: Optional[float] = None
    right: Optional[float] = None
    align_axes: list[str] = field(default_factory=list)       # glyph member alignment
    anchor_selector: Optional[Callable[["BoundNode"], bool]] = None  # cross-group anchor
    faded: bool = False
    highlighted: bool = False

    box: Box = (0.0, 0.0, 0.0, 0.0)

    def leaves(self) -> list["BoundNode"]:
        if not self.children:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out


def _flow_axis(category: str) -> str:
    return "x" if category in ("HStack", "HGrid") else "y"


def measure(node: BoundNode) -> tuple[float, float]:
    """Intrinsic size, bottom-up. Explicit extents win over derivation."""
    if node.kind == LEAF:
        w = node.width if node.width is not None else (
            (node.right - node.left) if node.right is not None and node.left is not None else 10.0)
        h = node.height if node.height is not None else (
            (node.bottom - node.top) if node.bottom is not None and node.top is not None else 10.0)
        node._mw, node._mh = w, h
        return w, h
    sizes = [measure(c) for c in node.children]
    if node.kind == GLYPH:
        w = node.width if node.width is not None else max(s[0] for s in sizes)
        h = node.height if node.height is not None else max(s[1] for s in sizes)
    elif node.category == "Packing":
        if node.width is None or node.height is None:
            if node.area is None:
                raise ValueError("packing nodes need explicit extents or an area share")
            w = h = 0.0  # sized by the parent packing cell at placement time
        else:
            w, h = node.width, node.height
    elif node.category in ("HStack", "HGrid"):
        inner = sum(s[0] for s in sizes) + node.gap * (len(sizes) - 1)
        w = node.width if node.width is not None else inner
        h = node.height if node.height is not None else max(s[1] for s in sizes)
    elif node.category in ("VStack", "VGrid"):
        inner = sum(s[1] for s in sizes) + node.gap * (len(sizes) - 1)
        h = node.height if node.height is not None else inner
        w = node.width if node.width is not None else max(s[0] for s in sizes)
    else:
        # relationship-free container (position-encoded children)
        xs = [(c.x or 0.0) + s[0] for c, s in zip(node.children, sizes)]
        ys = [(c.y or 0.0) + s[1] for c, s in zip(node.children, sizes)]
        w = node.width if node.width is not None else max(xs)
        h = node.height if node.height is not None else max(ys)
    node._mw, node._mh = w, h
    return w, h


def place(node: BoundNode, x: float, y: float) -> None:
    """Assign boxes top-down. measure() must have run on the node first."""
    w, h = node._mw, node._mh
    if node.kind == LEAF:
        x0 = node.left if node.left is not None else x
        y0 = node.top if node.top is not None else y
        x1 = node.right if node.right is not None else x0 + w
        y1 = node.bottom if node.bottom is not None else y0 + h
        node.box = (x0, y0, x1, y1)
        return
    node.box = (x, y, x + w, y + h)
    kids = node.children
    if node.kind == GLYPH:
        for c in kids:
            cw, ch = c._mw, c._mh
            cx = x
            cy = y + (h - ch) / 2
            axes = c.align_axes or node.align_axes or ["left", "centerY"]
            if "left" in axes:
                cx = x
            elif "right" in axes:
                cx = x + w - cw
            elif "centerX" in axes:
                cx = x + (w - cw) / 2
            if "top" in axes:
                cy = y
            elif "bottom" in axes:
                cy = y + h - ch
            elif "centerY" in axes:
                cy = y + (h - ch) / 2
            place(c, cx, cy)
        return
    if node.category in ("HStack", "VStack"):
        horizontal = node.category == "HStack"
        flows = [c._mw if horizontal else c._mh for c in kids]
        extent = (w if horizontal else h)
        inner = sum(flows) + node.gap * (len(kids) - 1)
        if abs(inner - extent) > 1e-9 and sum(flows) > 0:
            scale = (extent - node.gap * (len(kids) - 1)) / sum(flows)
            flows = [f * scale for f in flows]
        boxes = layout_stack(node.box, flows, node.category, node.gap)
        for c, b in zip(kids, boxes):
            # stack children span the frame's cross extent
            if horizontal:
                c._mw, c._mh = b[2] - b[0], h
            else:
                c._mw, c._mh = w, b[3] - b[1]
            place(c, b[0], b[1])
    elif node.category in ("HGrid", "VGrid"):
        sizes = [(c._mw, c._mh) for c in kids]
        rows, cols = (1, len(kids)) if node.category == "HGrid" else (len(kids), 1)
        boxes = layout_grid(node.box, sizes, rows, cols,
                            gap_x=node.gap, gap_y=node.gap, gravity=node.gravity)
        for c, b in zip(kids, boxes):
            place(c, b[0], b[1])
        _apply_cross_anchor(node)
    elif node.category == "Packing":
        areas = [c.area if c.area is not None else c._mw * c._mh for c in kids]
        boxes = layout_pack(node.box, areas, node.gap)
        for c, b in zip(kids, boxes):
            c._mw, c._mh = b[2] - b[0], b[3] - b[1]
            if c.kind != LEAF and c.category == "Packing":
                c.width, c.height = c._mw, c._mh
            place(c, b[0], b[1])
    else:
        for c in kids:
            place(c, x + (c.x or 0.0), y + (c.y or 0.0))


def _apply_cross_anchor(node: BoundNode) -> None:
    """Shift grid children so selected anchor descendants share a center.

    Used for data-anchored alignment across stacked collections (for example
    diverging stacks centered on one segment color). The shifted group is
    re-normalized so its hull keeps the original origin.
    """
    if node.anchor_selector is None:
        return
    horizontal_shift = node.category == "VGrid"
    centers = []
    for c in node.children:
        anchor = next((lf for lf in c.leaves() if node.anchor_selector(lf)), None)
        if anchor is None:
            return
        b = anchor.box
        centers.append((b[0] + b[2]) / 2 if horizontal_shift else (b[1] + b[3]) / 2)
    target = max(centers)
    shifts = [target - c0 for c0 in centers]
    for c, s in zip(node.children, shifts):
        if horizontal_shift:
            _translate(c, s, 0.0)
        else:
            _translate(c, 0.0, s)
    # keep the hull flush with the node origin
    min0 = min(c.box[0] if horizontal_shift else c.box[1] for c in node.children)
    base = node.box[0] if horizontal_shift else node.box[1]
    d = base - min0
    for c in node.children:
        if horizontal_shift:
            _translate(c, d, 0.0)
        else:
            _translate(c, 0.0, d)
    xs0 = [c.box[0] for c in node.children]
    ys0 = [c.box[1] for c in node.children]
    xs1 = [c.box[2] for c in node.children]
    ys1 = [c.box[3] for c in node.children]
    node.box = (min(xs0), min(ys0), max(xs1), max(ys1))


def _translate(node: BoundNode, dx: float, dy: float) -> None:
    node.box = (node.box[0] + dx, node.box[1] + dy, node.box[2] + dx, node.box[3] + dy)
    for c in node.children:
        _translate(c, dx, dy)


def solve(root: BoundNode, origin: tuple[float, float] = (0.0, 0.0)) -> BoundNode:
    measure(root)
    place(root, origin[0], origin[1])
    return root
