"""Instantiate a bound template on tabular data and emit SVG.

The instantiation walk mirrors the deconstructed tree: every mapped level
multiplies out the distinct values of its field (scoped to the parent's data
subset), encodings turn into sizes, sides and fills through shared scales,
and unmapped levels fall back to the example geometry at reduced opacity.
Placement runs through the same solver the synthetic generator uses, which is
why re-rendering a deconstructed chart on its own data reproduces the
original geometry.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field
from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..decorations.model import QUANTITATIVE
from ..errors import IncompatibleFieldType, UnboundStep, UnknownField
from ..grec.model import (
    GLYPH,
    LEAF,
    TARGET_GLYPH_MEMBER,
    TARGET_LEVEL,
    TARGET_MARK,
    GrecTemplate,
    GroupNode,
)
from . import svgwrite as sw
from .scales import nice_ceil, nice_floor, nice_step
from .solver import BoundNode, solve, measure

MARGIN_LEFT = 56.0
MARGIN_TOP = 34.0
MARGIN_RIGHT = 150.0
MARGIN_BOTTOM = 46.0

MODE_PARTIAL = "Partial"
MODE_FINAL = "Final"

_V_CHANNELS = ("height", "y", "topSide", "bottomSide")
_H_CHANNELS = ("width", "x", "leftSide", "rightSide")


@dataclass
class _Bind:
    channel: str
    field: str
    target_kind: str
    depth: int
    member_color: Optional[str] = None
    field_type: str = QUANTITATIVE


@dataclass
class _Binding:
    level_fields: dict[int, str] = field(default_factory=dict)
    channels: list[_Bind] = field(default_factory=list)

    def find(self, channel_set, target_kind=None, member_color=None) -> Optional[_Bind]:
        for b in self.channels:
            if b.channel not in channel_set:
                continue
            if target_kind is not None and b.target_kind != target_kind:
                continue
            if member_color is not None and b.member_color != member_color:
                continue
            return b
        return None


MAP_ENCODING = "MapEncoding"


def resolve_bindings(template: GrecTemplate, plan: list,
                     choices: dict[int, dict]) -> _Binding:
    binding = _Binding()
    for step in plan:
        choice = choices.get(step.index)
        if choice is None:
            continue
        if step.kind == MAP_ENCODING:
            enc = template.encodings[step.encoding_index]
            channel = choice.get("channel") or step.channel
            binding.channels.append(_Bind(
                channel=channel, field=choice["field"],
                target_kind=enc.target_kind, depth=enc.target_depth,
                member_color=enc.member_color, field_type=enc.field_type,
            ))
        else:
            binding.level_fields[step.level] = choice["field"]
    return binding


def _agg(rows: list[dict], field_name: str, how: str = "sum") -> float:
    vals = [float(r[field_name]) for r in rows if r.get(field_name) is not None]
    if not vals:
        return 0.0
    if how == "mean":
        return sum(vals) / len(vals)
    return sum(vals)


def _distinct(rows: list[dict], field_name: str) -> list:
    seen: list = []
    for r in rows:
        v = r[field_name]
        if v not in seen:
            seen.append(v)
    return seen


class _Scales:
    """Shared per-axis scales over every bound value in the instantiated chart."""

    def __init__(self, template: GrecTemplate, table, binding: _Binding,
                 rows: list[dict], config: Config):
        self.config = config
        self._level_fields = dict(binding.level_fields)
        box = template.content_box
        self.content_w = box[2] - box[0]
        self.content_h = box[3] - box[1]
        self.px_v = self._size_unit(template, rows, binding, vertical=True)
        self.px_h = self._size_unit(template, rows, binding, vertical=False)
        self.pos_y = self._pos_domain(binding, rows, ("y", "topSide", "bottomSide"))
        self.pos_x = self._pos_domain(binding, rows, ("x", "leftSide", "rightSide"))
        self.fill_bind = binding.find({"fill"})
        self.fill_map = self._fill_map(template, rows)

    def _size_unit(self, template, rows, binding, vertical: bool) -> float:
        """Pixels per value unit: the largest aggregate spans the extent of the
        example level that holds the encoded items (the whole content for flat
        charts, one panel for small multiples)."""
        channels = {"height"} if vertical else {"width"}
        binds = [b for b in binding.channels if b.channel in channels]
        if not binds:
            return 1.0
        extent = self._anchor_extent(template, binds, vertical)
        peak = self._max_aggregate(template, rows, binds, vertical)
        if peak <= 0:
            return 1.0
        return extent / nice_ceil(peak)

    def _anchor_extent(self, template, binds, vertical: bool) -> float:
        levels = template.levels()
        leaf_depth = len(levels) - 1
        depths = []
        for b in binds:
            if b.target_kind == TARGET_LEVEL:
                depths.append(max(b.depth - 1, 0))
            else:
                depths.append(max(leaf_depth - 1, 0))
        parent_depth = min(depths)
        nodes = levels[parent_depth]
        dim = (lambda n: n.bbox[3] - n.bbox[1]) if vertical \
            else (lambda n: n.bbox[2] - n.bbox[0])
        ext = max((dim(n) for n in nodes), default=0.0)
        if ext <= 0:
            ext = self.content_h if vertical else self.content_w
        return ext

    def _max_aggregate(self, template, rows, binds, vertical) -> float:
        """Largest summed extent along the stacking direction of the data tree."""
        flow_cat = "VStack" if vertical else "HStack"
        level_bind = next((b for b in binds if b.target_kind == TARGET_LEVEL), None)
        if level_bind is not None:
            groups = self._level_groups(template, level_bind.depth, rows)
            return max((_agg(g, level_bind.field, self.config.aggregation)
                        for g in groups), default=0.0)
        leaf_bind = next((b for b in binds
                          if b.target_kind in (TARGET_MARK, TARGET_GLYPH_MEMBER)), None)
        if leaf_bind is None:
            return 0.0
        # stack chains sum leaf values; everything else takes the max
        levels = template.levels()
        leaf_depth = len(levels) - 1
        if leaf_bind.target_kind == TARGET_GLYPH_MEMBER:
            binds_g = [b for b in binds if b.target_kind == TARGET_GLYPH_MEMBER]
            return max((float(r[b.field]) for b in binds_g for r in rows
                        if r.get(b.field) is not None), default=0.0)
        stack_depths = {
            d for d in range(leaf_depth)
            for n in levels[d]
            if n.relationship and n.relationship.category == flow_cat
        }
        total_field = leaf_bind.field
        if stack_depths:
            # stack nodes sit at the deepest stacking depth; rows grouped down
            # to that level are what the stack sums
            deepest = max(stack_depths)
            groups = self._level_groups(template, deepest, rows)
            return max((_agg(g, total_field, "sum") for g in groups), default=0.0)
        return max((float(r[total_field]) for r in rows
                    if r.get(total_field) is not None), default=0.0)

    def _level_groups(self, template, depth, rows) -> list[list[dict]]:
        groups = [rows]
        for d in range(1, depth + 1):
            f = self._level_fields.get(d)
            if f is None:
                return groups
            nxt = []
            for g in groups:
                for v in _distinct(g, f):
                    nxt.append([r for r in g if r[f] == v])
            groups = nxt
        return groups

    def _pos_domain(self, binding, rows, channels):
        binds = [b for b in binding.channels if b.channel in channels
                 and b.target_kind in (TARGET_MARK, TARGET_GLYPH_MEMBER, TARGET_LEVEL)]
        vals = [float(r[b.field]) for b in binds for r in rows
                if r.get(b.field) is not None]
        if not vals:
            return None
        lo, hi = min(vals), max(vals)
        if hi == lo:
            hi = lo + 1.0
        span = hi - lo
        return (nice_floor(lo, span), nice_ceil(hi))

    def y_pos(self, v: float) -> float:
        lo, hi = self.pos_y
        return self.content_h - (float(v) - lo) / (hi - lo) * self.content_h

    def x_pos(self, v: float, inset: float = 0.0) -> float:
        lo, hi = self.pos_x
        return (float(v) - lo) / (hi - lo) * (self.content_w - inset)

    def y_pos_group(self, v: float, inset: float) -> float:
        lo, hi = self.pos_y
        return (float(v) - lo) / (hi - lo) * (self.content_h - inset)

    def _fill_map(self, template: GrecTemplate, rows):
        if self.fill_bind is None:
            return None
        deco = template.decoration or {}
        legend = deco.get("legend") or {}
        if self.fill_bind.field_type == QUANTITATIVE:
            vals = [float(r[self.fill_bind.field]) for r in rows
                    if r.get(self.fill_bind.field) is not None]
            stops = legend.get("gradientStops") or [[0.0, "#2c7bb6"], [1.0, "#d7191c"]]
            lo, hi = (min(vals), max(vals)) if vals else (0.0, 1.0)

            def quant_fill(v):
                t = 0.5 if hi == lo else (float(v) - lo) / (hi - lo)
                return _lerp(stops, t)
            return quant_fill
        entries = {label: color for label, color in legend.get("entries", [])}
        example_fills = []
        for leaf in template.root.leaves():
            f = leaf.fill()
            if f and f not in example_fills:
                example_fills.append(f)
        assigned: dict = {}

        def cat_fill(v):
            if v in entries:
                return entries[v]
            if v not in assigned:
                pool = example_fills or ["#4e79a7"]
                assigned[v] = pool[len(assigned) % len(pool)]
            return assigned[v]
        return cat_fill


def _lerp(stops, t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    (o0, c0), (o1, c1) = stops[0], stops[-1]
    f = 0.0 if o1 == o0 else (t - o0) / (o1 - o0)
    a = [int(c0[i:i + 2], 16) for i in (1, 3, 5)]
    b = [int(c1[i:i + 2], 16) for i in (1, 3, 5)]
    return "#%02x%02x%02x" % tuple(round(x + (y - x) * f) for x, y in zip(a, b))


def _example_leaf_dims(template: GrecTemplate) -> tuple[float, float]:
    ws, hs = [], []
    for leaf in template.root.leaves():
        ws.append(leaf.bbox[2] - leaf.bbox[0])
        hs.append(leaf.bbox[3] - leaf.bbox[1])
    return (statistics.median(ws), statistics.median(hs)) if ws else (10.0, 10.0)


def _rel_args(proto: GroupNode) -> dict:
    rel = proto.relationship
    if rel is None:
        return {"category": None}
    gap = rel.gap
    if rel.category == "HGrid":
        gap = rel.gap_x
    elif rel.category == "VGrid":
        gap = rel.gap_y
    return {"category": rel.category, "gap": max(gap, 0.0), "gravity": rel.gravity}


class _Instantiator:
    def __init__(self, template: GrecTemplate, table, binding: _Binding,
                 mode: str, config: Config, highlight_level: Optional[int]):
        self.template = template
        self.binding = binding
        from ..reuse.schema import case_depth
        self.mode = mode
        self.config = config
        self.highlight_level = highlight_level
        self.case_level = case_depth(template)
        self.levels = template.levels()
        self.leaf_depth = len(self.levels) - 1
        self.warnings: list[str] = []
        rows = table.rows()
        quant_fields = {b.field for b in binding.channels
                        if b.field_type == QUANTITATIVE}
        kept = []
        for r in rows:
            bad = any(r.get(f) is None or r[f] != r[f] for f in quant_fields)
            if bad:
                self.warnings.append(f"dropped a row with missing numeric data: {r}")
            else:
                kept.append(r)
        self.rows = kept
        scales = _Scales(template, table, binding, kept, config)
        scales._level_fields = binding.level_fields
        self.scales = scales
        self.example_w, self.example_h = _example_leaf_dims(template)
        self._highlight_used = False
        self.anchor_color = next(
            (c.anchor_color for c in template.constraints
             if c.kind == "CrossGroupAlign" and c.anchor_color), None)
        self.glyph_axes = next(
            (list(c.axes) for c in template.constraints if c.kind == "GlyphAlign"),
            ["left", "centerY"])

    # -- example passthrough (unmapped levels render the template's geometry)

    def example_node(self, proto: GroupNode, faded: bool = True,
                     depth: int = 0) -> BoundNode:
        if proto.kind == LEAF:
            b = proto.bbox
            node = BoundNode(kind="leaf", width=b[2] - b[0], height=b[3] - b[1],
                             fill=proto.leaf_style.get("fill", "#999999"),
                             faded=faded)
        else:
            kids = []
            for c in proto.children:
                k = self.example_node(c, faded, depth + 1)
                k.x = c.bbox[0] - proto.bbox[0]
                k.y = c.bbox[1] - proto.bbox[1]
                kids.append(k)
            node = BoundNode(kind="collection", category=None, children=kids,
                             width=proto.bbox[2] - proto.bbox[0],
                             height=proto.bbox[3] - proto.bbox[1], faded=faded)
        # the step being asked may point inside still-unmapped example geometry
        if depth == self.highlight_level and not self._highlight_used:
            node.highlighted = True
            self._highlight_used = True
        return node

    # -- bound instantiation

    def build(self) -> BoundNode:
        root = self._node(self.template.root, 0, self.rows, label="")
        self._apply_root_frame(root)
        return root

    def _apply_root_frame(self, root: BoundNode) -> None:
        cw, ch = self.scales.content_w, self.scales.content_h
        if root.category == "Packing":
            root.width, root.height = cw, ch
        elif root.category in ("HStack", "VStack"):
            root.width, root.height = cw, ch
        elif root.category in ("HGrid", "VGrid") and root.gravity in ("Top", "Bottom"):
            root.height = ch
        elif root.category in ("HGrid", "VGrid") and root.gravity in ("Left", "Right"):
            root.width = cw

    def _node(self, proto: GroupNode, depth: int, subset: list[dict],
              label: str, parent_cat: Optional[str] = None) -> BoundNode:
        highlight = (self.highlight_level == depth and not self._highlight_used)
        if proto.kind == GLYPH or (
                depth == self.case_level and self.leaf_depth > self.case_level):
            node = self._glyph(proto, subset, label)
        elif proto.kind == LEAF or depth == self.leaf_depth:
            node = self._leaf(proto, subset, label)
        else:
            field_name = self.binding.level_fields.get(depth + 1)
            if field_name is None:
                node = self.example_node(proto, faded=self.mode == MODE_PARTIAL,
                                         depth=depth)
                node.label = label
                return node
            child_proto = proto.children[0]
            values = _distinct(subset, field_name)
            kids = []
            kid_cat = proto.relationship.category if proto.relationship else None
            for v in values:
                rows_v = [r for r in subset if r[field_name] == v]
                kids.append(self._node(child_proto, depth + 1, rows_v,
                                       label=str(v), parent_cat=kid_cat))
            node = BoundNode(kind="collection", children=kids, label=label,
                             level_name=field_name, **_rel_args(proto))
            self._apply_level_size(node, proto, depth, subset, parent_cat)
            if self.anchor_color and proto.relationship and \
                    proto.relationship.category in ("HGrid", "VGrid") and \
                    proto.relationship.gravity is None:
                anchor = self.anchor_color
                node.anchor_selector = lambda lf, a=anchor: lf.fill == a
        node.label = label
        if highlight:
            node.highlighted = True
            self._highlight_used = True
        return node

    def _apply_level_size(self, node: BoundNode, proto: GroupNode, depth: int,
                          subset: list[dict], parent_cat: Optional[str]) -> None:
        for dim, px in (("height", self.scales.px_v), ("width", self.scales.px_h)):
            b = self.binding.find({dim}, target_kind=TARGET_LEVEL)
            if b is not None and b.depth == depth:
                value = _agg(subset, b.field, self.config.aggregation)
                setattr(node, dim, value * px)
        if node.category != "Packing":
            return
        if parent_cat == "Packing":
            # sized by the parent's packing cells, proportionally to the total
            area_bind = self.binding.find({"area"})
            quant = area_bind or next(
                (b for b in self.binding.channels
                 if b.field_type == QUANTITATIVE), None)
            node.area = _agg(subset, quant.field, "sum") if quant else float(len(subset))
        else:
            # packing needs a frame: unbound dims come from the example
            if node.width is None:
                node.width = proto.bbox[2] - proto.bbox[0]
            if node.height is None:
                node.height = proto.bbox[3] - proto.bbox[1]

    def _glyph(self, proto: GroupNode, subset: list[dict], label: str) -> BoundNode:
        members = []
        for member in proto.children:
            color = member.fill() or ""
            m = BoundNode(kind="leaf",
                          width=member.bbox[2] - member.bbox[0],
                          height=member.bbox[3] - member.bbox[1],
                          fill=color or "#999999",
                          align_axes=self.glyph_axes)
            wb = self.binding.find({"width"}, target_kind=TARGET_GLYPH_MEMBER,
                                   member_color=color)
            if wb is not None:
                m.width = _agg(subset, wb.field, self.config.aggregation) * self.scales.px_h
            hb = self.binding.find({"height"}, target_kind=TARGET_GLYPH_MEMBER,
                                   member_color=color)
            if hb is not None:
                m.height = _agg(subset, hb.field, self.config.aggregation) * self.scales.px_v
            members.append(m)
        return BoundNode(kind="glyph", children=members, label=label,
                         align_axes=self.glyph_axes)

    def _leaf(self, proto: GroupNode, subset: list[dict], label: str) -> BoundNode:
        leaf = BoundNode(kind="leaf", label=label)
        b = self.binding
        s = self.scales
        height_b = b.find({"height"}, target_kind=TARGET_MARK)
        width_b = b.find({"width"}, target_kind=TARGET_MARK)
        area_b = b.find({"area"}, target_kind=TARGET_MARK)
        top_b = b.find({"topSide"})
        bottom_b = b.find({"bottomSide"})
        left_b = b.find({"leftSide"})
        right_b = b.find({"rightSide"})
        y_b = b.find({"y"}, target_kind=TARGET_MARK)
        x_b = b.find({"x"}, target_kind=TARGET_MARK)

        leaf.height = (_agg(subset, height_b.field, self.config.aggregation) * s.px_v
                       if height_b else self.example_h)
        leaf.width = (_agg(subset, width_b.field, self.config.aggregation) * s.px_h
                      if width_b else self.example_w)
        if area_b is not None:
            leaf.area = _agg(subset, area_b.field, "sum")
        top = s.y_pos(_agg(subset, top_b.field, "mean")) if top_b else None
        bottom = s.y_pos(_agg(subset, bottom_b.field, "mean")) if bottom_b else None
        if top is not None and bottom is None and height_b is not None:
            bottom = top + leaf.height
        if bottom is not None and top is None and height_b is not None:
            top = bottom - leaf.height
        if top is not None and bottom is not None:
            leaf.top, leaf.bottom = min(top, bottom), max(top, bottom)
            leaf.height = leaf.bottom - leaf.top
        elif y_b is not None:
            leaf.top = s.y_pos(_agg(subset, y_b.field, "mean"))
            leaf.bottom = leaf.top + leaf.height
        left = s.x_pos(_agg(subset, left_b.field, "mean")) if left_b else None
        right = s.x_pos(_agg(subset, right_b.field, "mean")) if right_b else None
        if left is not None and right is not None:
            leaf.left, leaf.right = min(left, right), max(left, right)
            leaf.width = leaf.right - leaf.left
        elif x_b is not None:
            leaf.left = s.x_pos(_agg(subset, x_b.field, "mean"))
            leaf.right = leaf.left + leaf.width
        if s.fill_bind is not None and s.fill_map is not None:
            fill_value = subset[0].get(s.fill_bind.field) if subset else None
            leaf.fill = s.fill_map(fill_value) if fill_value is not None else "#999999"
        else:
            leaf.fill = proto.leaf_style.get("fill", "#4e79a7") if proto.kind == LEAF \
                else "#4e79a7"
        return leaf


def render_chart(template: GrecTemplate, table,
                 choices: dict[int, dict], mode: str = MODE_FINAL,
                 plan: Optional[list] = None,
                 config: Config = DEFAULT_CONFIG,
                 highlight_step: Optional[int] = None) -> str:
    """Render the template bound to data. Partial mode keeps unmapped parts as
    faded example geometry and outlines the step currently being asked."""
    from ..reuse.plan import generate_plan
    from ..reuse.schema import infer_schema
    if plan is None:
        plan = generate_plan(template, infer_schema(template), table)
    if mode == MODE_FINAL:
        missing = [s.index for s in plan if s.index not in choices]
        if missing:
            raise UnboundStep(f"steps without a recorded choice: {missing}")
    binding = resolve_bindings(template, plan, choices)
    for step in plan:
        choice = choices.get(step.index)
        if choice is None:
            continue
        if not table.has(choice["field"]):
            raise UnknownField(f"column {choice['field']!r} is not in the table")
    highlight_level = None
    if highlight_step is not None and 0 <= highlight_step < len(plan):
        highlight_level = plan[highlight_step].level
    inst = _Instantiator(template, table, binding, mode, config, highlight_level)
    # type compatibility is advisory: mismatches warn, never block
    for step in plan:
        choice = choices.get(step.index)
        if choice is None:
            continue
        col = table.column(choice["field"])
        if step.kind == MAP_ENCODING and step.field_type == QUANTITATIVE \
                and col.field_type != QUANTITATIVE:
            inst.warnings.append(
                f"step {step.index}: {col.name} is {col.field_type}, expected numeric")
        if step.kind != MAP_ENCODING and col.field_type == QUANTITATIVE:
            inst.warnings.append(
                f"step {step.index}: grouping by numeric column {col.name}")
    root = inst.build()
    # position-encoded groups and marks need measured sizes before placement
    measure(root)
    _apply_positions(root, inst)
    solve(root)
    return _emit(template, inst, root, mode)


def _apply_positions(root: BoundNode, inst: _Instantiator) -> None:
    binding = inst.binding
    s = inst.scales
    xb = binding.find({"x"}, target_kind=TARGET_LEVEL)
    yb = binding.find({"y"}, target_kind=TARGET_LEVEL)
    if not (xb or yb) or root.category is not None:
        return
    for child, rows_v in zip(root.children, _subsets_for(root, inst)):
        if xb is not None and s.pos_x is not None:
            child.x = s.x_pos(_agg(rows_v, xb.field, "mean"), inset=child._mw)
        if yb is not None and s.pos_y is not None:
            child.y = s.y_pos_group(_agg(rows_v, yb.field, "mean"), inset=child._mh)


def _subsets_for(root: BoundNode, inst: _Instantiator) -> list[list[dict]]:
    f = inst.binding.level_fields.get(1)
    if f is None:
        return [[] for _ in root.children]
    return [[r for r in inst.rows if str(r[f]) == c.label] for c in root.children]


def _emit(template: GrecTemplate, inst: _Instantiator, root: BoundNode,
          mode: str) -> str:
    cw = max(root.box[2] - root.box[0], 1.0)
    ch = max(root.box[3] - root.box[1], 1.0)
    width = MARGIN_LEFT + cw + MARGIN_RIGHT
    height = MARGIN_TOP + ch + MARGIN_BOTTOM
    doc = sw.svg_document(width, height)
    ox = MARGIN_LEFT - root.box[0]
    oy = MARGIN_TOP - root.box[1]

    def walk(node: BoundNode, parent: sw.Tag):
        if node.kind == "leaf":
            x0, y0, x1, y1 = node.box
            attrs = {"fill": node.fill, "data-role": "mark"}
            if node.faded:
                attrs["opacity"] = inst.config.fade_opacity
            if node.highlighted:
                attrs["stroke"] = "#1a73e8"
                attrs["stroke-width"] = inst.config.highlight_stroke_width
            parent.add(sw.rect(x0 + ox, y0 + oy, x1 - x0, y1 - y0, **attrs))
            return
        attrs = {}
        if node.level_name:
            attrs["data-level"] = node.level_name
        if node.label:
            attrs["data-label"] = node.label
        if node.highlighted:
            attrs["data-highlight"] = "1"
        g = parent.add(sw.group(**attrs))
        if node.highlighted:
            x0, y0, x1, y1 = node.box
            g.add(sw.rect(x0 + ox - 2, y0 + oy - 2, x1 - x0 + 4, y1 - y0 + 4,
                          fill="none", stroke="#1a73e8",
                          **{"stroke-width": inst.config.highlight_stroke_width}))
        for c in node.children:
            walk(c, g)

    content = doc.add(sw.group(**{"class": "content"}))
    walk(root, content)
    _emit_decorations(doc, template, inst, root, ox, oy, cw)
    return doc.render()


def _emit_decorations(doc: sw.Tag, template: GrecTemplate, inst: _Instantiator,
                      root: BoundNode, ox: float, oy: float, cw: float) -> None:
    s = inst.scales
    base_y = root.box[3] + oy
    # bottom labels from the outermost horizontal-flow mapping
    if root.category in ("HGrid", "HStack") and root.children:
        for child in root.children:
            if not child.label:
                continue
            cx = (child.box[0] + child.box[2]) / 2 + ox
            doc.add(sw.text(cx, base_y + 14, child.label,
                            **{"text-anchor": "middle", "font-size": 11,
                               "fill": "#333333"}))
    elif root.category in ("VGrid", "VStack") and root.children:
        for child in root.children:
            if not child.label:
                continue
            cy = (child.box[1] + child.box[3]) / 2 + oy
            doc.add(sw.text(root.box[0] + ox - 8, cy + 3.5, child.label,
                            **{"text-anchor": "end", "font-size": 11,
                               "fill": "#333333"}))
    # vertical value axis when a height scale is active
    has_height = inst.binding.find({"height"}) is not None
    if has_height and s.px_v > 0:
        dmax = s.content_h / s.px_v
        if dmax > 0:
            step = nice_step(dmax / 5)
            v = 0.0
            while v <= dmax + 1e-9:
                ty = root.box[3] - v * s.px_v + oy
                doc.add(sw.text(MARGIN_LEFT - 10, ty + 3.5, f"{v:g}",
                                **{"text-anchor": "end", "font-size": 11,
                                   "fill": "#333333"}))
                v += step
    elif s.pos_y is not None:
        lo, hi = s.pos_y
        step = nice_step((hi - lo) / 5)
        v = lo
        while v <= hi + 1e-9:
            ty = root.box[1] + s.y_pos(v) + oy
            doc.add(sw.text(MARGIN_LEFT - 10, ty + 3.5, f"{v:g}",
                            **{"text-anchor": "end", "font-size": 11,
                               "fill": "#333333"}))
            v += step
    # legend from the fill binding
    if s.fill_bind is not None and s.fill_map is not None:
        lx = root.box[2] + ox + 24
        ly = root.box[1] + oy + 4
        if s.fill_bind.field_type == QUANTITATIVE:
            vals = [float(r[s.fill_bind.field]) for r in inst.rows
                    if r.get(s.fill_bind.field) is not None]
            if vals:
                lo, hi = min(vals), max(vals)
                for k, t in enumerate((0.0, 0.5, 1.0)):
                    doc.add(sw.rect(lx, ly + k * 14, 12, 12,
                                    fill=s.fill_map(lo + t * (hi - lo))))
                    doc.add(sw.text(lx + 17, ly + k * 14 + 10, f"{lo + t * (hi - lo):g}",
                                    **{"font-size": 11, "fill": "#333333"}))
        else:
            values = _distinct(inst.rows, s.fill_bind.field)
            for k, v in enumerate(values):
                doc.add(sw.rect(lx, ly + k * 18, 11, 11, fill=s.fill_map(v)))
                doc.add(sw.text(lx + 16, ly + k * 18 + 10, str(v),
                                **{"font-size": 11, "fill": "#333333"}))
