"""Minimal deterministic SVG writer.

Attribute order is insertion order and floats are fixed to two decimals, so
identical inputs always produce identical bytes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

Attr = Union[str, int, float]


def fnum(v: float) -> str:
    s = f"{float(v):.2f}"
    return "0.00" if s == "-0.00" else s


@dataclass
class Tag:
    name: str
    attrs: dict[str, Attr] = field(default_factory=dict)
    children: list["Tag"] = field(default_factory=list)
    text: Optional[str] = None

    def add(self, child: "Tag") -> "Tag":
        self.children.append(child)
        return child

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        parts = [pad, "<", self.name]
        for k, v in self.attrs.items():
            if isinstance(v, float):
                v = fnum(v)
            parts.append(f' {k}="{v}"')
        if not self.children and self.text is None:
            parts.append("/>")
            return "".join(parts)
        parts.append(">")
        if self.text is not None:
            parts.append(_escape(self.text))
        if self.children:
            parts.append("\n")
            for c in self.children:
                parts.append(c.render(indent + 1))
                parts.append("\n")
            parts.append(pad)
        parts.append(f"</{self.name}>")
        return "".join(parts)


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def svg_document(width: float, height: float) -> Tag:
    return Tag("svg", {
        "xmlns": "http://www.w3.org/2000/svg",
        "width": fnum(width), "height": fnum(height),
        "viewBox": f"0 0 {fnum(width)} {fnum(height)}",
    })


def rect(x: float, y: float, w: float, h: float, **attrs: Attr) -> Tag:
    return Tag("rect", {"x": fnum(x), "y": fnum(y), "width": fnum(w), "height": fnum(h), **attrs})


def rect_as_path(x: float, y: float, w: float, h: float, **attrs: Attr) -> Tag:
    d = f"M{fnum(x)},{fnum(y)} H{fnum(x + w)} V{fnum(y + h)} H{fnum(x)} Z"
    return Tag("path", {"d": d, **attrs})


def line(x1: float, y1: float, x2: float, y2: float, **attrs: Attr) -> Tag:
    return Tag("line", {"x1": fnum(x1), "y1": fnum(y1), "x2": fnum(x2), "y2": fnum(y2), **attrs})


def text(x: float, y: float, content: str, **attrs: Attr) -> Tag:
    t = Tag("text", {"x": fnum(x), "y": fnum(y), **attrs})
    t.text = content
    return t


def group(**attrs: Attr) -> Tag:
    return Tag("g", attrs)
