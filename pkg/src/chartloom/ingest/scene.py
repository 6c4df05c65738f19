"""Flattened scene model: typed elements with absolute pixel coordinates.

The normalized scene is the wire format every downstream stage consumes, so
ids must stay dense and serialization stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..errors import EmptyScene
from ..geometry import Box
from .pathdata import PathLine, PathRect, path_to_shape
from .svgdoc import RawNode, inherited_style, parse_svg, resolve_absolute, viewbox_of

KIND_RECT = "Rect"
KIND_LINE = "Line"
KIND_TEXT = "Text"
KIND_OTHER = "Other"

_NON_RENDERED = {"defs", "symbol", "clipPath", "mask", "marker", "pattern", "metadata", "title", "desc", "style"}

NAMED_COLORS = {
    "black": "#000000", "white": "#ffffff", "red": "#ff0000", "green": "#008000",
    "blue": "#0000ff", "gray": "#808080", "grey": "#808080", "silver": "#c0c0c0",
    "orange": "#ffa500", "yellow": "#ffff00", "purple": "#800080", "teal": "#008080",
    "navy": "#000080", "lightgray": "#d3d3d3", "lightgrey": "#d3d3d3",
    "darkgray": "#a9a9a9", "steelblue": "#4682b4", "tomato": "#ff6347",
    "goldenrod": "#daa520", "seagreen": "#2e8b57", "crimson": "#dc143c",
}

_RGB_RE = re.compile(r"rgb\(\s*(\d+)\s*,\s*(\d+)\s*,\s*(\d+)\s*\)")


def normalize_color(value: str) -> str:
    """Lowercase 6-digit hex where resolvable; unresolvable values kept verbatim."""
    v = value.strip().lower()
    if v in NAMED_COLORS:
        return NAMED_COLORS[v]
    if re.fullmatch(r"#[0-9a-f]{6}", v):
        return v
    if re.fullmatch(r"#[0-9a-f]{3}", v):
        return "#" + "".join(ch * 2 for ch in v[1:])
    m = _RGB_RE.fullmatch(v)
    if m:
        return "#%02x%02x%02x" % tuple(min(255, int(g)) for g in m.groups())
    return v


def _norm_style_value(key: str, value: str) -> str:
    if key in ("fill", "stroke") and value.lower() not in ("none",) and not value.startswith("url("):
        return normalize_color(value)
    if key in ("stroke-width", "font-size", "opacity", "fill-opacity"):
        return str(value).replace("px", "").strip()
    return value


@dataclass
class SceneElement:
    id: int
    kind: str
    x: float = 0.0
    y: float = 0.0
    width: float = 0.0
    height: float = 0.0
    x1: float = 0.0
    y1: float = 0.0
    x2: float = 0.0
    y2: float = 0.0
    content: str = ""
    style: dict[str, str] = field(default_factory=dict)
    source_path: list[int] = field(default_factory=list)

    @property
    def bbox(self) -> Box:
        if self.kind == KIND_LINE:
            return (
                min(self.x1, self.x2), min(self.y1, self.y2),
                max(self.x1, self.x2), max(self.y1, self.y2),
            )
        if self.kind == KIND_TEXT:
            fs = float(self.style.get("font-size", "12") or 12)
            w = max(self.width, 0.6 * fs * max(len(self.content), 1))
            anchor = self.style.get("text-anchor", "start")
            if anchor == "middle":
                x0 = self.x - w / 2
            elif anchor == "end":
                x0 = self.x - w
            else:
                x0 = self.x
            return (x0, self.y - fs, x0 + w, self.y)
        return (self.x, self.y, self.x + self.width, self.y + self.height)

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "kind": self.kind,
            "x": self.x,
            "y": self.y,
            "width": self.width,
            "height": self.height,
            "style": dict(self.style),
            "sourcePath": list(self.source_path),
        }
        if self.kind == KIND_LINE:
            out.update(x1=self.x1, y1=self.y1, x2=self.x2, y2=self.y2)
        if self.kind == KIND_TEXT:
            out["content"] = self.content
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "SceneElement":
        return cls(
            id=raw["id"], kind=raw["kind"],
            x=raw.get("x", 0.0), y=raw.get("y", 0.0),
            width=raw.get("width", 0.0), height=raw.get("height", 0.0),
            x1=raw.get("x1", 0.0), y1=raw.get("y1", 0.0),
            x2=raw.get("x2", 0.0), y2=raw.get("y2", 0.0),
            content=raw.get("content", ""),
            style=dict(raw.get("style", {})),
            source_path=list(raw.get("sourcePath", [])),
        )


@dataclass
class NormalizedScene:
    elements: list[SceneElement]
    view_box: tuple[float, float, float, float]

    def rects(self) -> list[SceneElement]:
        return [e for e in self.elements if e.kind == KIND_RECT]

    def texts(self) -> list[SceneElement]:
        return [e for e in self.elements if e.kind == KIND_TEXT]

    def lines(self) -> list[SceneElement]:
        return [e for e in self.elements if e.kind == KIND_LINE]

    def by_id(self, eid: int) -> SceneElement:
        return self.elements[eid]

    def reindexed(self, elements: list[SceneElement]) -> "NormalizedScene":
        """New scene with dense ids in the given element order."""
        out = []
        for i, el in enumerate(elements):
            clone = SceneElement(**{**el.__dict__, "id": i, "style": dict(el.style),
                                    "source_path": list(el.source_path)})
            out.append(clone)
        return NormalizedScene(out, self.view_box)

    def to_json(self) -> str:
        doc = {
            "viewBox": list(self.view_box),
            "elements": [e.to_dict() for e in self.elements],
        }
        return json.dumps(doc, indent=2)

    @classmethod
    def from_json(cls, text: str) -> "NormalizedScene":
        doc = json.loads(text)
        return cls(
            elements=[SceneElement.from_dict(e) for e in doc["elements"]],
            view_box=tuple(doc["viewBox"]),  # type: ignore[arg-type]
        )


def _gradient_stops(root: RawNode) -> dict[str, list[tuple[float, str]]]:
    grads: dict[str, list[tuple[float, str]]] = {}
    for node in root.iter_nodes():
        if node.tag in ("linearGradient", "radialGradient") and "id" in node.attrs:
            stops = []
            for stop in node.children:
                if stop.tag != "stop":
                    continue
                off = stop.attrs.get("offset", "0").replace("%", "")
                try:
                    off_v = float(off) / (100.0 if "%" in stop.attrs.get("offset", "") else 1.0)
                except ValueError:
                    off_v = 0.0
                color = normalize_color(stop.attrs.get("stop-color", "#000000"))
                stops.append((off_v, color))
            grads[node.attrs["id"]] = stops
    return grads


def _under_non_rendered(node: RawNode) -> bool:
    cur: Optional[RawNode] = node
    while cur is not None:
        if cur.tag in _NON_RENDERED:
            return True
        cur = cur.parent
    return False


def _text_content(node: RawNode) -> str:
    parts = [node.text] if node.text else []
    for child in node.children:
        if child.tag == "tspan":
            parts.append(_text_content(child))
    return " ".join(p for p in parts if p)


def normalize_scene(svg_text: str, config: Config = DEFAULT_CONFIG) -> NormalizedScene:
    """Full ingest: parse, flatten transforms, recognize shapes, resolve styles."""
    root = parse_svg(svg_text)
    view_box = viewbox_of(root)
    gradients = _gradient_stops(root)
    elements: list[SceneElement] = []

    def push(el: SceneElement):
        el.id = len(elements)
        elements.append(el)

    for node, mat in resolve_absolute(root):
        if _under_non_rendered(node):
            continue
        style = {k: _norm_style_value(k, v) for k, v in inherited_style(node).items()}
        fill = style.get("fill", "")
        if fill.startswith("url(") and "#" in fill:
            gid = fill[fill.index("#") + 1:].rstrip(") ")
            stops = gradients.get(gid)
            if stops:
                style["gradient-stops"] = ";".join(f"{o:g}:{c}" for o, c in stops)
        src = node.ancestry()

        def rect_el(x, y, w, h):
            if w <= 0 or h <= 0:
                return None
            (ax0, ay0) = mat.apply(x, y)
            (ax1, ay1) = mat.apply(x + w, y + h)
            if not mat.preserves_axes():
                corners = [mat.apply(px, py) for px, py in ((x, y), (x + w, y), (x + w, y + h), (x, y + h))]
                bx0 = min(c[0] for c in corners); by0 = min(c[1] for c in corners)
                bx1 = max(c[0] for c in corners); by1 = max(c[1] for c in corners)
                return SceneElement(0, KIND_OTHER, x=bx0, y=by0, width=bx1 - bx0, height=by1 - by0,
                                    style=style, source_path=src)
            rx0, rx1 = sorted((ax0, ax1)); ry0, ry1 = sorted((ay0, ay1))
            if rx1 - rx0 <= 0 or ry1 - ry0 <= 0:
                return None
            return SceneElement(0, KIND_RECT, x=rx0, y=ry0, width=rx1 - rx0, height=ry1 - ry0,
                                style=style, source_path=src)

        made: Optional[SceneElement] = None
        if node.tag == "rect":
            made = rect_el(
                float(node.attrs.get("x", 0)), float(node.attrs.get("y", 0)),
                float(node.attrs.get("width", 0)), float(node.attrs.get("height", 0)),
            )
        elif node.tag == "line":
            (lx1, ly1) = mat.apply(float(node.attrs.get("x1", 0)), float(node.attrs.get("y1", 0)))
            (lx2, ly2) = mat.apply(float(node.attrs.get("x2", 0)), float(node.attrs.get("y2", 0)))
            sw = float(style.get("stroke-width", "1") or 1)
            if config.line_as_rect and sw >= config.line_as_rect_min_stroke and (lx1 == lx2 or ly1 == ly2):
                # Degenerate idiom: thick lines standing in for bars.
                if lx1 == lx2:
                    made = SceneElement(0, KIND_RECT, x=lx1 - sw / 2, y=min(ly1, ly2),
                                        width=sw, height=abs(ly2 - ly1), style=style, source_path=src)
                else:
                    made = SceneElement(0, KIND_RECT, x=min(lx1, lx2), y=ly1 - sw / 2,
                                        width=abs(lx2 - lx1), height=sw, style=style, source_path=src)
            else:
                made = SceneElement(0, KIND_LINE, x1=lx1, y1=ly1, x2=lx2, y2=ly2,
                                    style=style, source_path=src)
        elif node.tag == "path":
            shape = path_to_shape(node.attrs.get("d", ""), tol=config.rect_vertex_tol)
            if isinstance(shape, PathRect):
                made = rect_el(shape.x, shape.y, shape.width, shape.height)
            elif isinstance(shape, PathLine):
                (lx1, ly1) = mat.apply(shape.x1, shape.y1)
                (lx2, ly2) = mat.apply(shape.x2, shape.y2)
                made = SceneElement(0, KIND_LINE, x1=lx1, y1=ly1, x2=lx2, y2=ly2,
                                    style=style, source_path=src)
            else:
                made = SceneElement(0, KIND_OTHER, style=style, source_path=src)
        elif node.tag == "text":
            (tx, ty) = mat.apply(float(node.attrs.get("x", 0)), float(node.attrs.get("y", 0)))
            if "text-anchor" in node.attrs:
                style["text-anchor"] = node.attrs["text-anchor"]
            made = SceneElement(0, KIND_TEXT, x=tx, y=ty, content=_text_content(node),
                                style=style, source_path=src)
        else:
            made = SceneElement(0, KIND_OTHER, style=style, source_path=src)
        if made is not None:
            push(made)

    return NormalizedScene(elements, view_box)


def filter_noise(scene: NormalizedScene, config: Config = DEFAULT_CONFIG) -> NormalizedScene:
    """Drop dummy content: invisible rects, backgrounds, far off-screen elements.

    Idempotent; raises EmptyScene when nothing remains.
    """
    vx, vy, vw, vh = scene.view_box
    view_area = vw * vh
    fx0 = vx - vw * (config.offscreen_factor - 1) / 2
    fy0 = vy - vh * (config.offscreen_factor - 1) / 2
    fx1 = vx + vw + vw * (config.offscreen_factor - 1) / 2
    fy1 = vy + vh + vh * (config.offscreen_factor - 1) / 2

    kept: list[SceneElement] = []
    for el in scene.elements:
        bx0, by0, bx1, by1 = el.bbox
        if bx1 < fx0 or bx0 > fx1 or by1 < fy0 or by0 > fy1:
            continue  # fully outside the expanded viewBox (off-screen tooltips)
        if el.kind == KIND_RECT:
            if el.width <= 0 or el.height <= 0:
                continue
            opacity = float(el.style.get("opacity", "1") or 1)
            fill_opacity = float(el.style.get("fill-opacity", "1") or 1)
            fill = el.style.get("fill", "#000000")
            stroke = el.style.get("stroke", "none")
            if opacity <= 0 or fill_opacity <= 0:
                continue
            if fill == "none" and (not stroke or stroke == "none"):
                continue
            ix = max(0.0, min(bx1, vx + vw) - max(bx0, vx))
            iy = max(0.0, min(by1, vy + vh) - max(by0, vy))
            if view_area > 0 and ix * iy >= config.background_area_fraction * view_area:
                continue  # full-bleed background
        kept.append(el)
    if not kept:
        raise EmptyScene("no elements remain after noise filtering")
    return scene.reindexed(kept)
