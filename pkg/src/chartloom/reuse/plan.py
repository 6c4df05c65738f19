"""Ordered reuse steps: group mappings, mark mapping, then encodings."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from ..decorations.model import QUANTITATIVE
from ..grec.model import GrecTemplate
from .schema import DataSchema, case_depth
from .table import DataTable

MAP_GROUP_LEVEL = "MapGroupLevel"
MAP_MARK = "MapMark"
MAP_ENCODING = "MapEncoding"


@dataclass
class ReuseStep:
    index: int
    kind: str
    level: int
    prompt: str
    field_type: str = "Categorical"
    channel: Optional[str] = None
    channel_options: list[str] = field(default_factory=list)
    field_options: list[str] = field(default_factory=list)
    suggestion: Optional[dict] = None
    encoding_index: Optional[int] = None
    member_color: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "index": self.index, "kind": self.kind, "level": self.level,
            "prompt": self.prompt, "fieldType": self.field_type,
            "channel": self.channel,
            "channelOptions": list(self.channel_options),
            "fieldOptions": list(self.field_options),
            "suggestion": self.suggestion,
            "encodingIndex": self.encoding_index,
            "memberColor": self.member_color,
        }


def suggest_encoding(step: ReuseStep, table: DataTable,
                     used_categorical: Optional[set[str]] = None) -> Optional[dict]:
    """First numeric column for quantitative channels, first unused
    categorical column otherwise; None when nothing matches."""
    if step.kind != MAP_ENCODING:
        return None
    if step.field_type == QUANTITATIVE:
        numeric = table.quantitative_names()
        if numeric:
            return {"channel": step.channel, "field": numeric[0]}
        return None
    used = used_categorical or set()
    for name in table.categorical_names():
        if name not in used:
            return {"channel": step.channel, "field": name}
    return None


def generate_plan(template: GrecTemplate, schema: DataSchema,
                  table: Optional[DataTable] = None) -> list[ReuseStep]:
    """MapGroupLevel outermost first, one MapMark for the data-case level,
    then a MapEncoding per inferred channel (side channels carry options)."""
    steps: list[ReuseStep] = []
    depth = case_depth(template)
    cat_fields = table.categorical_names() if table else []
    quant_fields = table.quantitative_names() if table else []

    for level in range(1, depth + 1):
        kind = MAP_MARK if level == depth else MAP_GROUP_LEVEL
        noun = "rectangle mark" if kind == MAP_MARK else f"level-{level} group"
        steps.append(ReuseStep(
            index=len(steps), kind=kind, level=level,
            prompt=f"Choose the field whose values the {noun} should represent",
            field_options=list(cat_fields),
        ))

    for ei, enc in enumerate(template.encodings):
        fields = quant_fields if enc.field_type == QUANTITATIVE else cat_fields
        steps.append(ReuseStep(
            index=len(steps), kind=MAP_ENCODING, level=enc.target_depth,
            prompt=(f"Choose the visual channel and field for the "
                    f"{enc.channel} encoding"),
            field_type=enc.field_type,
            channel=enc.channel,
            channel_options=list(enc.alternatives),
            field_options=list(fields),
            encoding_index=ei,
            member_color=enc.member_color,
        ))

    if table is not None:
        used: set[str] = set()
        for step in steps:
            if step.kind == MAP_ENCODING:
                step.suggestion = suggest_encoding(step, table, used)
            else:
                free = [c for c in cat_fields if c not in used]
                if free:
                    step.suggestion = {"field": free[0]}
                    used.add(free[0])
    return steps
