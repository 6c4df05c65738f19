"""SVG emission for synthetic charts.

Three structural variants mirror how tools serialize the same chart:
variant A nests semantic groups, variant B flattens every mark into one
group, and variant C writes rectangles as <path> data under stacked
transforms. All three carry the same decorations plus deliberate scene noise
(full-bleed background, off-screen tooltip, zero-size rect).
"""

from __future__ import annotations

from ..render import svgwrite as sw
from ..render.solver import BoundNode, LEAF
from .builders import ChartBuild, LegendSpec

MARGIN_LEFT = 56.0
MARGIN_TOP = 34.0
MARGIN_RIGHT = 150.0
MARGIN_BOTTOM = 46.0

FONT = 11


def _leaf_tags(leaf: BoundNode, dx: float, dy: float, as_path: bool) -> sw.Tag:
    x0, y0, x1, y1 = leaf.box
    maker = sw.rect_as_path if as_path else sw.rect
    return maker(x0 + dx, y0 + dy, x1 - x0, y1 - y0, fill=leaf.fill)


def _emit_content(build: ChartBuild, variant: str) -> list[sw.Tag]:
    root = build.root
    leaves = root.leaves()
    if variant == "A":
        def walk(node: BoundNode) -> sw.Tag:
            if node.kind == LEAF:
                return _leaf_tags(node, MARGIN_LEFT, MARGIN_TOP, as_path=False)
            g = sw.group(**({"class": node.level_name} if node.level_name else {}))
            for c in node.children:
                g.add(walk(c))
            return g
        return [walk(root)]
    if variant == "B":
        g = sw.group(**{"class": "marks"})
        for leaf in reversed(leaves):
            g.add(_leaf_tags(leaf, MARGIN_LEFT, MARGIN_TOP, as_path=False))
        return [g]
    if variant == "C":
        outer = sw.group(transform=f"translate({sw.fnum(MARGIN_LEFT)},0)")
        inner = outer.add(sw.group(transform=f"translate(0,{sw.fnum(MARGIN_TOP)})"))
        nested = inner.add(sw.group(transform="matrix(1,0,0,1,0,0)"))
        for leaf in leaves:
            nested.add(_leaf_tags(leaf, 0.0, 0.0, as_path=True))
        return [outer]
    raise ValueError(f"unknown variant {variant!r}")


def _emit_axis_x(doc: sw.Tag, build: ChartBuild) -> None:
    ax = build.decor.x_axis
    if ax is None:
        return
    for tier_i, tier in enumerate(ax.tiers):
        row = ax.tier_rows[tier_i]
        for text, anchor in tier:
            doc.add(sw.text(MARGIN_LEFT + anchor, MARGIN_TOP + row, text,
                            **{"text-anchor": "middle", "font-size": FONT,
                               "fill": "#333333"}))
    if ax.ticks:
        base = MARGIN_TOP + ax.tier_rows[0]
        for text, anchor in ax.tiers[0]:
            doc.add(sw.line(MARGIN_LEFT + anchor, base - 11, MARGIN_LEFT + anchor,
                            base - 6, stroke="#333333"))
    if ax.axis_line:
        a0, a1 = ax.axis_line
        y = MARGIN_TOP + ax.tier_rows[0] - 11.5
        doc.add(sw.line(MARGIN_LEFT + a0, y, MARGIN_LEFT + a1, y, stroke="#333333"))


def _emit_axis_y(doc: sw.Tag, build: ChartBuild) -> None:
    ax = build.decor.y_axis
    if ax is None:
        return
    col = ax.tier_rows[0]
    for text, anchor in ax.tiers[0]:
        doc.add(sw.text(MARGIN_LEFT + col, MARGIN_TOP + anchor + 3.5, text,
                        **{"text-anchor": "end", "font-size": FONT, "fill": "#333333"}))
    if ax.ticks:
        for text, anchor in ax.tiers[0]:
            doc.add(sw.line(MARGIN_LEFT + col + 3, MARGIN_TOP + anchor,
                            MARGIN_LEFT + col + 8, MARGIN_TOP + anchor,
                            stroke="#333333"))
    if ax.axis_line:
        a0, a1 = ax.axis_line
        x = MARGIN_LEFT + col + 8.5
        doc.add(sw.line(x, MARGIN_TOP + a0, x, MARGIN_TOP + a1, stroke="#333333"))


def _emit_legend(doc: sw.Tag, legend: LegendSpec, lx: float, ly: float,
                 grad_id: str) -> None:
    if legend.kind == "Discrete":
        for k, (label, color) in enumerate(legend.entries):
            sy = ly + k * 18.0
            doc.add(sw.rect(lx, sy, 11, 11, fill=color))
            doc.add(sw.text(lx + 16, sy + 10, label,
                            **{"font-size": FONT, "fill": "#333333"}))
    elif legend.kind == "Continuous":
        doc.add(sw.rect(lx, ly, 14, 90, fill=f"url(#{grad_id})"))
        ticks = legend.tick_labels or ["0", "50", "100"]
        positions = [ly + 88, ly + 46, ly + 4]
        for label, py in zip(ticks, positions):
            doc.add(sw.text(lx + 20, py, label,
                            **{"font-size": FONT, "fill": "#333333"}))


def emit_chart(build: ChartBuild, variant: str = "A") -> str:
    root = build.root
    cw = max(root.box[2], 1.0)
    ch = max(root.box[3], 240.0)
    width = MARGIN_LEFT + cw + MARGIN_RIGHT
    height = MARGIN_TOP + ch + MARGIN_BOTTOM
    doc = sw.svg_document(width, height)

    needs_grad = build.decor.legend.kind == "Continuous"
    if needs_grad:
        defs = doc.add(sw.Tag("defs"))
        grad = defs.add(sw.Tag("linearGradient", {
            "id": "legendgrad", "x1": "0", "y1": "1", "x2": "0", "y2": "0"}))
        for off, color in build.decor.legend.stops:
            grad.add(sw.Tag("stop", {"offset": f"{off:g}", "stop-color": color}))

    # scene noise every chart carries: background, off-screen tooltip, empty rect
    doc.add(sw.rect(0, 0, width, height, fill="#ffffff"))
    doc.add(sw.rect(width * 1.8, 40, 50, 18, fill="#123456"))
    doc.add(sw.rect(5, 5, 0, 40, fill="#222222"))

    for y in build.decor.gridline_ys:
        doc.add(sw.line(MARGIN_LEFT, MARGIN_TOP + y, MARGIN_LEFT + cw, MARGIN_TOP + y,
                        stroke="#e0e0e0"))

    for tag in _emit_content(build, variant):
        doc.add(tag)

    _emit_axis_x(doc, build)
    _emit_axis_y(doc, build)
    _emit_legend(doc, build.decor.legend, MARGIN_LEFT + cw + 24, MARGIN_TOP + 18,
                 "legendgrad")
    fake = getattr(build.decor, "fake_legend", None)
    if fake is not None:
        _emit_legend(doc, fake, MARGIN_LEFT + cw + 24, MARGIN_TOP + 18, "legendgrad")

    doc.add(sw.text(MARGIN_LEFT + cw / 2, MARGIN_TOP - 12, build.decor.title,
                    **{"text-anchor": "middle", "font-size": 13, "fill": "#111111"}))
    for content, tx, ty in build.decor.extra_texts:
        doc.add(sw.text(MARGIN_LEFT + tx, MARGIN_TOP + ty, content,
                        **{"text-anchor": "middle", "font-size": FONT,
                           "fill": "#333333"}))
    return doc.render()
