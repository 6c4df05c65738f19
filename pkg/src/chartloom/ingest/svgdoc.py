"""SVG text to an attribute-preserving element tree.

Real-world charts bury mark styling in ancestor groups and express positions
through stacked transforms, so the raw tree keeps every attribute plus the
parsed local transform for later flattening.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from typing import Optional

from ..errors import MalformedSvg, NoSvgRoot
from .transforms import IDENTITY, AffineMatrix, parse_transform

# Styles that cascade from groups onto marks.
INHERITABLE = ("fill", "stroke", "stroke-width", "font-size", "opacity", "fill-opacity")

DRAWABLE_TAGS = {"rect", "line", "path", "text", "circle", "ellipse", "polygon", "polyline"}


@dataclass
class RawNode:
    tag: str
    attrs: dict[str, str]
    parent: Optional["RawNode"] = None
    children: list["RawNode"] = field(default_factory=list)
    local_transform: Optional[AffineMatrix] = None
    text: str = ""
    index: int = 0

    def iter_nodes(self):
        yield self
        for child in self.children:
            yield from child.iter_nodes()

    def ancestry(self) -> list[int]:
        path = []
        node = self
        while node is not None:
            path.append(node.index)
            node = node.parent
        return list(reversed(path))


def _strip_ns(tag: str) -> str:
    return tag.rsplit("}", 1)[-1] if "}" in tag else tag


def _style_attr_pairs(style: str):
    for part in style.split(";"):
        if ":" in part:
            k, v = part.split(":", 1)
            yield k.strip(), v.strip()


def parse_svg(svg_text: str) -> RawNode:
    """Parse SVG text into a RawNode tree, document order preserved.

    Inline ``style`` declarations win over presentation attributes; both are
    folded into ``attrs``. Raises MalformedSvg / NoSvgRoot.
    """
    if "<!ENTITY" in svg_text:
        # Entity expansion is disabled defensively for untrusted uploads.
        raise MalformedSvg("entity declarations are not accepted")
    try:
        root_el = ET.fromstring(svg_text)
    except ET.ParseError as exc:
        raise MalformedSvg(str(exc)) from exc
    if _strip_ns(root_el.tag) != "svg":
        raise NoSvgRoot(f"root element is <{_strip_ns(root_el.tag)}>, not <svg>")

    counter = [0]

    def build(el, parent: Optional[RawNode]) -> RawNode:
        attrs = {_strip_ns(k): v for k, v in el.attrib.items()}
        if "style" in attrs:
            for k, v in _style_attr_pairs(attrs.pop("style")):
                attrs[k] = v  # inline style beats the presentation attribute
        node = RawNode(
            tag=_strip_ns(el.tag),
            attrs=attrs,
            parent=parent,
            text=(el.text or "").strip(),
            index=counter[0],
        )
        counter[0] += 1
        if "transform" in attrs:
            node.local_transform = parse_transform(attrs["transform"])
        for child_el in el:
            node.children.append(build(child_el, node))
        return node

    return build(root_el, None)


def resolve_absolute(root: RawNode) -> list[tuple[RawNode, AffineMatrix]]:
    """Pair each drawable leaf node with the composition of ancestor transforms.

    Matrices compose parent-first, so the returned matrix maps the node's
    local coordinates straight to absolute pixels.
    """
    out: list[tuple[RawNode, AffineMatrix]] = []

    def walk(node: RawNode, acc: AffineMatrix):
        if node.local_transform is not None:
            acc = acc.compose(node.local_transform)
        if node.tag in DRAWABLE_TAGS and node.tag != "text":
            out.append((node, acc))
        elif node.tag == "text":
            out.append((node, acc))
            return  # tspans are merged into their parent text
        for child in node.children:
            walk(child, acc)

    walk(root, IDENTITY)
    return out


def inherited_style(node: RawNode) -> dict[str, str]:
    """Resolve cascading styles: own attrs beat the nearest ancestor value."""
    style: dict[str, str] = {}
    chain = []
    cur: Optional[RawNode] = node
    while cur is not None:
        chain.append(cur)
        cur = cur.parent
    for ancestor in reversed(chain):  # root first, node last: nearest wins
        for key in INHERITABLE:
            if key in ancestor.attrs:
                style[key] = ancestor.attrs[key]
    return style


def viewbox_of(root: RawNode) -> tuple[float, float, float, float]:
    raw = root.attrs.get("viewBox")
    if raw:
        parts = [float(p) for p in raw.replace(",", " ").split()]
        if len(parts) == 4:
            return tuple(parts)  # type: ignore[return-value]
    def _px(name, default):
        value = root.attrs.get(name)
        if value is None:
            return default
        return float(str(value).replace("px", "").strip() or default)
    return (0.0, 0.0, _px("width", 800.0), _px("height", 600.0))
