"""Template model: groups, spatial relationships, encodings, constraints."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..config import Config
from ..geometry import Box

# Relation categories and their matrix bit encoding. Overlap displays as -1
# and "no relation" as X; both are sentinels, not categories.
HSTACK = "HStack"
VSTACK = "VStack"
HGRID = "HGrid"
VGRID = "VGrid"
PACKING = "Packing"
OVERLAPPING = "Overlapping"
NULL = "Null"

BIT_HS = 1
BIT_VS = 2
BIT_HG = 4
BIT_VG = 8
BIT_P = 16
BIT_OV = 32

BIT_OF = {HSTACK: BIT_HS, VSTACK: BIT_VS, HGRID: BIT_HG, VGRID: BIT_VG, PACKING: BIT_P}
CATEGORY_OF_BIT = {v: k for k, v in BIT_OF.items()}

# Short labels used in matrix displays and tests.
SHORT = {HSTACK: "HS", VSTACK: "VS", HGRID: "HG", VGRID: "VG", PACKING: "P"}

STACKS = (HSTACK, VSTACK)
GRIDS = (HGRID, VGRID)


@dataclass(frozen=True)
class RelationSet:
    """Result of the pairwise distance function: applicable categories or overlap."""

    bits: int
    gap: float

    @property
    def overlapping(self) -> bool:
        return bool(self.bits & BIT_OV)

    def categories(self) -> tuple[str, ...]:
        if self.overlapping:
            return ()
        return tuple(c for c, b in BIT_OF.items() if self.bits & b)

    def labels(self) -> set[str]:
        """Display labels: {'HS', ...}, {'-1'} for overlap, {'X'} for null."""
        if self.overlapping:
            return {"-1"}
        cats = self.categories()
        if not cats:
            return {"X"}
        return {SHORT[c] for c in cats}

    def has(self, category: str) -> bool:
        return bool(self.bits & BIT_OF[category])


@dataclass
class DistanceMatrix:
    """Upper-triangular pairwise relation matrix over rects or group hulls."""

    n: int
    cats: "object"   # uint8 condensed array, len n*(n-1)/2
    gaps: "object"   # float32 condensed array
    items: list[int]
    universal_gap: Optional[float] = None

    @staticmethod
    def condensed_index(i: int, j: int, n: int) -> int:
        if i > j:
            i, j = j, i
        return i * (2 * n - i - 1) // 2 + (j - i - 1)

    def cell(self, i: int, j: int) -> RelationSet:
        if i == j:
            raise ValueError("diagonal is unused")
        k = self.condensed_index(i, j, self.n)
        return RelationSet(int(self.cats[k]), float(self.gaps[k]))

    def labels(self, i: int, j: int) -> set[str]:
        return self.cell(i, j).labels()


@dataclass
class RelationshipDescriptor:
    category: str
    gap: float = 0.0          # stack / packing
    gap_x: float = 0.0        # grid
    gap_y: float = 0.0
    rows: int = 1
    cols: int = 1
    gravity: Optional[str] = None  # grid only: Top/Bottom/Left/Right/CenterH/CenterV
    order: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "category": self.category, "gap": round(self.gap, 3),
            "gapX": round(self.gap_x, 3), "gapY": round(self.gap_y, 3),
            "rows": self.rows, "cols": self.cols,
            "gravity": self.gravity, "order": list(self.order),
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "RelationshipDescriptor":
        return cls(
            category=raw["category"], gap=raw.get("gap", 0.0),
            gap_x=raw.get("gapX", 0.0), gap_y=raw.get("gapY", 0.0),
            rows=raw.get("rows", 1), cols=raw.get("cols", 1),
            gravity=raw.get("gravity"), order=list(raw.get("order", [])),
        )


COLLECTION = "Collection"
GLYPH = "Glyph"
LEAF = "Leaf"


@dataclass
class GroupNode:
    kind: str
    children: list["GroupNode"] = field(default_factory=list)
    leaf_id: Optional[int] = None
    leaf_style: dict[str, str] = field(default_factory=dict)
    relationship: Optional[RelationshipDescriptor] = None
    bbox: Box = (0.0, 0.0, 0.0, 0.0)
    position_encoded: bool = False

    def leaves(self) -> list["GroupNode"]:
        if self.kind == LEAF:
            return [self]
        out = []
        for c in self.children:
            out.extend(c.leaves())
        return out

    def depth(self) -> int:
        """Length of the longest child chain below this node."""
        if not self.children:
            return 0
        return 1 + max(c.depth() for c in self.children)

    def fill(self) -> Optional[str]:
        return self.leaf_style.get("fill") if self.kind == LEAF else None

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "bbox": [round(v, 3) for v in self.bbox]}
        if self.position_encoded:
            out["positionEncoded"] = True
        if self.kind == LEAF:
            out["elementId"] = self.leaf_id
            out["style"] = dict(self.leaf_style)
        else:
            out["relationship"] = self.relationship.to_dict() if self.relationship else None
            out["children"] = [c.to_dict() for c in self.children]
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "GroupNode":
        if raw["kind"] == LEAF:
            return cls(kind=LEAF, leaf_id=raw.get("elementId"),
                       leaf_style=dict(raw.get("style", {})),
                       bbox=tuple(raw["bbox"]),  # type: ignore[arg-type]
                       position_encoded=raw.get("positionEncoded", False))
        rel = raw.get("relationship")
        return cls(
            kind=raw["kind"],
            children=[cls.from_dict(c) for c in raw.get("children", [])],
            relationship=RelationshipDescriptor.from_dict(rel) if rel else None,
            bbox=tuple(raw["bbox"]),  # type: ignore[arg-type]
            position_encoded=raw.get("positionEncoded", False),
        )


TARGET_MARK = "mark"
TARGET_LEVEL = "level"
TARGET_GLYPH_MEMBER = "glyphMember"


@dataclass
class Encoding:
    channel: str            # x, y, width, height, fill, area, topSide, bottomSide, ...
    field_type: str         # Categorical | Quantitative | Date
    target_kind: str = TARGET_MARK
    target_depth: int = 0   # for level targets: depth below root (root children = 1)
    member_color: Optional[str] = None  # glyph member selector
    field_name: Optional[str] = None
    alternatives: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "channel": self.channel, "fieldType": self.field_type,
            "target": {"kind": self.target_kind, "depth": self.target_depth},
            "fieldName": self.field_name,
        }
        if self.member_color:
            out["target"]["memberColor"] = self.member_color
        if self.alternatives:
            out["alternatives"] = list(self.alternatives)
        return out

    @classmethod
    def from_dict(cls, raw: dict) -> "Encoding":
        tgt = raw.get("target", {})
        return cls(
            channel=raw["channel"], field_type=raw["fieldType"],
            target_kind=tgt.get("kind", TARGET_MARK), target_depth=tgt.get("depth", 0),
            member_color=tgt.get("memberColor"), field_name=raw.get("fieldName"),
            alternatives=list(raw.get("alternatives", [])),
        )


@dataclass
class GraphicalConstraint:
    kind: str                      # GlyphAlign | CrossGroupAlign
    axes: list[str]                # left/right/centerX/top/bottom/centerY
    anchor_color: Optional[str] = None
    level_depth: int = 0           # depth of the groups the constraint spans

    def to_dict(self) -> dict:
        return {"kind": self.kind, "axes": list(self.axes),
                "anchorColor": self.anchor_color, "levelDepth": self.level_depth}

    @classmethod
    def from_dict(cls, raw: dict) -> "GraphicalConstraint":
        return cls(kind=raw["kind"], axes=list(raw["axes"]),
                   anchor_color=raw.get("anchorColor"), level_depth=raw.get("levelDepth", 0))


@dataclass
class GrecTemplate:
    root: GroupNode
    encodings: list[Encoding] = field(default_factory=list)
    constraints: list[GraphicalConstraint] = field(default_factory=list)
    content_box: Box = (0.0, 0.0, 0.0, 0.0)
    forest: bool = False           # true when the root only wraps unmergeable groups
    decoration: Optional[dict] = None
    warnings: list[str] = field(default_factory=list)
    config: Optional[Config] = None

    def levels(self) -> list[list[GroupNode]]:
        """Nodes per depth, root at index 0."""
        out = [[self.root]]
        while out[-1] and any(n.children for n in out[-1]):
            nxt: list[GroupNode] = []
            for n in out[-1]:
                nxt.extend(n.children)
            out.append(nxt)
        return out

    def leaf_depth(self) -> int:
        return len(self.levels()) - 1

    def structure_summary(self) -> dict:
        """Order-insensitive shape record used for round-trip comparison."""
        levels = self.levels()
        per_level = []
        for nodes in levels[:-1]:
            cats = sorted({
                (n.relationship.category if n.relationship else "None",
                 n.relationship.gravity if n.relationship else None,
                 n.kind)
                for n in nodes if n.children
            })
            per_level.append(cats)
        return {
            "depth": len(levels) - 1,
            "forest": self.forest,
            "levels": per_level,
            "positionEncodedRoots": sorted({n.position_encoded for n in levels[1 if self.forest else 0]}),
            "encodings": sorted(
                (e.channel, e.target_kind, e.target_depth) for e in self.encodings
            ),
            "constraints": sorted(
                (c.kind, tuple(c.axes)) for c in self.constraints
            ),
        }

    def to_dict(self) -> dict:
        return {
            "root": self.root.to_dict(),
            "forest": self.forest,
            "encodings": [e.to_dict() for e in self.encodings],
            "constraints": [c.to_dict() for c in self.constraints],
            "contentBox": [round(v, 3) for v in self.content_box],
            "decoration": self.decoration,
            "warnings": list(self.warnings),
            "config": self.config.to_dict() if self.config else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, raw: dict) -> "GrecTemplate":
        return cls(
            root=GroupNode.from_dict(raw["root"]),
            forest=raw.get("forest", False),
            encodings=[Encoding.from_dict(e) for e in raw.get("encodings", [])],
            constraints=[GraphicalConstraint.from_dict(c) for c in raw.get("constraints", [])],
            content_box=tuple(raw.get("contentBox", (0, 0, 0, 0))),  # type: ignore[arg-type]
            decoration=raw.get("decoration"),
            warnings=list(raw.get("warnings", [])),
            config=Config.from_dict(raw["config"]) if raw.get("config") else None,
        )

    @classmethod
    def from_json(cls, text: str) -> "GrecTemplate":
        return cls.from_dict(json.loads(text))
