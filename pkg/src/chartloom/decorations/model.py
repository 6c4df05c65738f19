"""Axis, legend and correction records."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from ..geometry import Box

CATEGORICAL = "Categorical"
QUANTITATIVE = "Quantitative"
DATE = "Date"

X_AXIS = "XAxis"
Y_AXIS = "YAxis"
LEGEND = "Legend"

DISCRETE = "Discrete"
CONTINUOUS = "Continuous"
NONE = "None"


@dataclass
class TierLabel:
    element_id: int
    text: str
    anchor: float  # along the axis orientation, px

    def to_dict(self) -> dict:
        return {"elementId": self.element_id, "text": self.text, "anchor": round(self.anchor, 3)}

    @classmethod
    def from_dict(cls, raw: dict) -> "TierLabel":
        return cls(raw["elementId"], raw["text"], raw["anchor"])


@dataclass
class AxisModel:
    orientation: str                      # "X" | "Y"
    tiers: list[list[TierLabel]] = field(default_factory=list)
    field_types: list[str] = field(default_factory=list)
    field_type_overrides: list[Optional[str]] = field(default_factory=list)
    tick_ids: list[int] = field(default_factory=list)
    axis_line_id: Optional[int] = None
    pixel_range: tuple[float, float] = (0.0, 0.0)
    numeric_domain: Optional[tuple[float, float]] = None

    def labels(self, tier: int = 0) -> list[str]:
        return [l.text for l in self.tiers[tier]] if tier < len(self.tiers) else []

    def claimed_ids(self) -> set[int]:
        out = {l.element_id for tier in self.tiers for l in tier}
        out.update(self.tick_ids)
        if self.axis_line_id is not None:
            out.add(self.axis_line_id)
        return out

    def to_dict(self) -> dict:
        return {
            "orientation": self.orientation,
            "tiers": [[l.to_dict() for l in tier] for tier in self.tiers],
            "fieldTypes": list(self.field_types),
            "fieldTypeOverrides": list(self.field_type_overrides),
            "tickIds": list(self.tick_ids),
            "axisLineId": self.axis_line_id,
            "pixelRange": [round(v, 3) for v in self.pixel_range],
            "numericDomain": list(self.numeric_domain) if self.numeric_domain else None,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "AxisModel":
        return cls(
            orientation=raw["orientation"],
            tiers=[[TierLabel.from_dict(l) for l in tier] for tier in raw.get("tiers", [])],
            field_types=list(raw.get("fieldTypes", [])),
            field_type_overrides=list(raw.get("fieldTypeOverrides", [])),
            tick_ids=list(raw.get("tickIds", [])),
            axis_line_id=raw.get("axisLineId"),
            pixel_range=tuple(raw.get("pixelRange", (0, 0))),  # type: ignore[arg-type]
            numeric_domain=tuple(raw["numericDomain"]) if raw.get("numericDomain") else None,
        )


@dataclass
class LegendModel:
    kind: str = NONE
    entries: list[tuple[str, str]] = field(default_factory=list)   # (label, colorHex)
    entry_ids: list[int] = field(default_factory=list)             # marks and texts
    gradient_stops: list[tuple[float, str]] = field(default_factory=list)
    tick_values: list[float] = field(default_factory=list)
    region: Optional[Box] = None

    def claimed_ids(self) -> set[int]:
        return set(self.entry_ids)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "entries": [list(e) for e in self.entries],
            "entryIds": list(self.entry_ids),
            "gradientStops": [[o, c] for o, c in self.gradient_stops],
            "tickValues": list(self.tick_values),
            "region": list(self.region) if self.region else None,
        }

    @classmethod
    def from_dict(cls, raw: dict) -> "LegendModel":
        return cls(
            kind=raw.get("kind", NONE),
            entries=[tuple(e) for e in raw.get("entries", [])],  # type: ignore[misc]
            entry_ids=list(raw.get("entryIds", [])),
            gradient_stops=[tuple(s) for s in raw.get("gradientStops", [])],  # type: ignore[misc]
            tick_values=list(raw.get("tickValues", [])),
            region=tuple(raw["region"]) if raw.get("region") else None,  # type: ignore[arg-type]
        )


@dataclass
class Correction:
    kind: str    # AddLabel, RemoveLabel, AddTier, DesignateRegion, RemoveDecoration, SetFieldType
    target: str  # XAxis | YAxis | Legend
    payload: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "target": self.target, "payload": dict(self.payload)}

    @classmethod
    def from_dict(cls, raw: dict) -> "Correction":
        return cls(kind=raw["kind"], target=raw["target"], payload=dict(raw.get("payload", {})))


def corrections_from_json(text: str) -> list[Correction]:
    return [Correction.from_dict(r) for r in json.loads(text)]


@dataclass
class DecorationModel:
    x_axis: Optional[AxisModel] = None
    y_axis: Optional[AxisModel] = None
    legend: LegendModel = field(default_factory=LegendModel)

    def claimed_ids(self) -> set[int]:
        out: set[int] = set()
        for axis in (self.x_axis, self.y_axis):
            if axis is not None:
                out |= axis.claimed_ids()
        out |= self.legend.claimed_ids()
        return out

    def validate(self) -> None:
        """An element may belong to at most one decoration."""
        sets = []
        for axis in (self.x_axis, self.y_axis):
            if axis is not None:
                sets.append(axis.claimed_ids())
        sets.append(self.legend.claimed_ids())
        total = sum(len(s) for s in sets)
        merged: set[int] = set()
        for s in sets:
            merged |= s
        if len(merged) != total:
            raise ValueError("an element id is claimed by more than one decoration")

    def summary(self) -> dict:
        """Semantic content used for ground-truth comparison and templates."""
        def axis_summary(axis: Optional[AxisModel]):
            if axis is None:
                return None
            return {
                "tiers": [sorted(l.text for l in tier) for tier in axis.tiers],
                "fieldTypes": list(axis.field_types),
            }
        return {
            "xAxis": axis_summary(self.x_axis),
            "yAxis": axis_summary(self.y_axis),
            "legend": {
                "kind": self.legend.kind,
                "entries": sorted(list(e) for e in self.legend.entries),
            },
        }

    def to_dict(self) -> dict:
        return {
            "xAxis": self.x_axis.to_dict() if self.x_axis else None,
            "yAxis": self.y_axis.to_dict() if self.y_axis else None,
            "legend": self.legend.to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, raw: dict) -> "DecorationModel":
        return cls(
            x_axis=AxisModel.from_dict(raw["xAxis"]) if raw.get("xAxis") else None,
            y_axis=AxisModel.from_dict(raw["yAxis"]) if raw.get("yAxis") else None,
            legend=LegendModel.from_dict(raw.get("legend", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "DecorationModel":
        return cls.from_dict(json.loads(text))
