"""Data schema a template requires: grouping levels and encoded channels."""

from __future__ import annotations

from dataclasses import dataclass

from ..decorations.model import CATEGORICAL, DATE, QUANTITATIVE
from ..grec.model import GLYPH, TARGET_LEVEL, GrecTemplate


@dataclass(frozen=True)
class DataSchema:
    c_group: int
    c_encode: int
    q_encode: int

    @property
    def min_categorical(self) -> int:
        return max(self.c_group, self.c_encode)

    @property
    def min_quantitative(self) -> int:
        return self.q_encode

    def to_dict(self) -> dict:
        return {
            "cGroup": self.c_group, "cEncode": self.c_encode,
            "qEncode": self.q_encode,
            "minCategorical": self.min_categorical,
            "minQuantitative": self.min_quantitative,
        }


def case_depth(template: GrecTemplate) -> int:
    """Depth of the innermost data-case level.

    Glyph members all belong to one data case, so a glyph level is the case
    level and members below it consume no grouping field.
    """
    levels = template.levels()
    leaf_depth = len(levels) - 1
    if leaf_depth >= 1 and all(n.kind == GLYPH for n in levels[leaf_depth - 1]):
        return leaf_depth - 1
    return leaf_depth


def infer_schema(template: GrecTemplate) -> DataSchema:
    """Field counts: one categorical per grouping level, channel counts from
    the encodings. Group-level size channels default to aggregating a leaf
    quantity, so they add no extra column when a leaf quantity exists."""
    c_group = case_depth(template)
    c_encode = sum(1 for e in template.encodings
                   if e.field_type in (CATEGORICAL, DATE))
    quant = [e for e in template.encodings if e.field_type == QUANTITATIVE]
    group_sizes = [e for e in quant
                   if e.target_kind == TARGET_LEVEL and e.channel in ("width", "height")]
    leaf_quant = [e for e in quant if e.target_kind != TARGET_LEVEL]
    q_encode = len(quant) - (len(group_sizes) if leaf_quant else 0)
    return DataSchema(c_group=c_group, c_encode=c_encode, q_encode=q_encode)
