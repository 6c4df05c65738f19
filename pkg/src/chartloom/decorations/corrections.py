"""Structured corrections over the detected decoration model.

Corrections are plain records so the CLI can replay them from a file and the
wizard can send them over the wire. Applying one returns a new model; the
input is never mutated.
"""

from __future__ import annotations

import copy
from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..errors import InvalidRegion, TierOutOfRange, UnknownElement
from ..ingest.scene import KIND_RECT, KIND_TEXT, NormalizedScene
from .detect import _anchor_of, detect_axis_in_region, detect_legend, finalize_axis
from .model import (
    LEGEND,
    NONE,
    X_AXIS,
    Y_AXIS,
    AxisModel,
    Correction,
    DecorationModel,
    LegendModel,
    TierLabel,
)

ADD_LABEL = "AddLabel"
REMOVE_LABEL = "RemoveLabel"
ADD_TIER = "AddTier"
DESIGNATE_REGION = "DesignateRegion"
REMOVE_DECORATION = "RemoveDecoration"
SET_FIELD_TYPE = "SetFieldType"


def _axis_for(model: DecorationModel, target: str) -> Optional[AxisModel]:
    if target == X_AXIS:
        return model.x_axis
    if target == Y_AXIS:
        return model.y_axis
    return None


def _set_axis(model: DecorationModel, target: str, axis: Optional[AxisModel]) -> None:
    if target == X_AXIS:
        model.x_axis = axis
    elif target == Y_AXIS:
        model.y_axis = axis


def apply_correction(model: DecorationModel, scene: NormalizedScene, c: Correction,
                     config: Config = DEFAULT_CONFIG) -> DecorationModel:
    """Apply one correction record and re-validate the resulting model."""
    model = copy.deepcopy(model)
    kind, target = c.kind, c.target

    if kind == REMOVE_DECORATION:
        if target == LEGEND:
            model.legend = LegendModel(kind=NONE)
        else:
            _set_axis(model, target, None)

    elif kind == ADD_TIER:
        axis = _require_axis(model, target)
        axis.tiers.append([])
        axis.field_type_overrides.append(None)
        finalize_axis(axis)

    elif kind == ADD_LABEL:
        ids = list(c.payload.get("elementIds", []))
        tier = int(c.payload.get("tier", 0))
        if target == LEGEND:
            _legend_add(model, scene, ids)
        else:
            axis = _require_axis(model, target, create=True)
            if tier >= len(axis.tiers) or tier < 0:
                raise TierOutOfRange(f"axis has {len(axis.tiers)} tiers, got {tier}")
            for eid in ids:
                el = _lookup(scene, eid)
                if el.kind != KIND_TEXT:
                    raise UnknownElement(f"element {eid} is not a text label")
                axis.tiers[tier].append(
                    TierLabel(eid, el.content, _anchor_of(el, axis.orientation)))
            finalize_axis(axis)

    elif kind == REMOVE_LABEL:
        ids = set(c.payload.get("elementIds", []))
        for eid in ids:
            _lookup(scene, eid)
        if target == LEGEND:
            # entry k owns ids (mark k, text k) in the parallel id layout
            old_ids = list(model.legend.entry_ids)
            n = len(model.legend.entries)
            kept = [k for k in range(n)
                    if not ({old_ids[k] if k < len(old_ids) else -1,
                             old_ids[n + k] if n + k < len(old_ids) else -1} & ids)]
            model.legend.entries = [model.legend.entries[k] for k in kept]
            marks = [old_ids[k] for k in kept if k < len(old_ids)]
            texts = [old_ids[n + k] for k in kept if n + k < len(old_ids)]
            model.legend.entry_ids = marks + texts
        else:
            axis = _require_axis(model, target)
            axis.tiers = [[l for l in tier if l.element_id not in ids] for tier in axis.tiers]
            finalize_axis(axis)

    elif kind == DESIGNATE_REGION:
        box = c.payload.get("region")
        if not box or len(box) != 4 or box[2] <= box[0] or box[3] <= box[1]:
            raise InvalidRegion(f"bad region {box!r}")
        region = tuple(float(v) for v in box)
        excluded = model.claimed_ids()
        if target == LEGEND:
            sub = [e.id for e in scene.elements
                   if not (e.bbox[2] < region[0] or e.bbox[0] > region[2]
                           or e.bbox[3] < region[1] or e.bbox[1] > region[3])]
            outside = {e.id for e in scene.elements if e.id not in sub}
            model.legend = detect_legend(scene, config, excluded=excluded | outside)
        else:
            orientation = "X" if target == X_AXIS else "Y"
            found = detect_axis_in_region(scene, orientation, region, config, excluded=excluded)
            _set_axis(model, target, found)

    elif kind == SET_FIELD_TYPE:
        axis = _require_axis(model, target)
        tier = int(c.payload.get("tier", 0))
        if tier >= len(axis.tiers) or tier < 0:
            raise TierOutOfRange(f"axis has {len(axis.tiers)} tiers, got {tier}")
        axis.field_type_overrides[tier] = c.payload.get("fieldType")
        finalize_axis(axis)

    else:
        raise ValueError(f"unknown correction kind {kind!r}")

    model.validate()
    return model


def apply_corrections(model: DecorationModel, scene: NormalizedScene,
                      corrections: list[Correction],
                      config: Config = DEFAULT_CONFIG) -> DecorationModel:
    for c in corrections:
        model = apply_correction(model, scene, c, config)
    return model


def _require_axis(model: DecorationModel, target: str, create: bool = False) -> AxisModel:
    axis = _axis_for(model, target)
    if axis is None:
        if not create:
            raise UnknownElement(f"{target} is not present; designate a region first")
        axis = AxisModel(orientation="X" if target == X_AXIS else "Y", tiers=[[]])
        _set_axis(model, target, axis)
    return axis


def _lookup(scene: NormalizedScene, eid: int):
    if eid < 0 or eid >= len(scene.elements):
        raise UnknownElement(f"no element with id {eid}")
    return scene.elements[eid]
