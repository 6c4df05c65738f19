from .corrections import (
    ADD_LABEL,
    ADD_TIER,
    DESIGNATE_REGION,
    REMOVE_DECORATION,
    REMOVE_LABEL,
    SET_FIELD_TYPE,
    apply_correction,
    apply_corrections,
)
from .detect import (
    detect_axes,
    detect_axis_in_region,
    detect_decorations,
    detect_legend,
    infer_field_type,
)
from .model import (
    CATEGORICAL,
    CONTINUOUS,
    DATE,
    DISCRETE,
    LEGEND,
    NONE,
    QUANTITATIVE,
    X_AXIS,
    Y_AXIS,
    AxisModel,
    Correction,
    DecorationModel,
    LegendModel,
    TierLabel,
    corrections_from_json,
)
from .strip import strip_decorations

__all__ = [
    "AxisModel", "LegendModel", "DecorationModel", "TierLabel", "Correction",
    "corrections_from_json",
    "detect_axes", "detect_axis_in_region", "detect_legend", "detect_decorations",
    "infer_field_type", "apply_correction", "apply_corrections", "strip_decorations",
    "CATEGORICAL", "QUANTITATIVE", "DATE", "X_AXIS", "Y_AXIS", "LEGEND",
    "DISCRETE", "CONTINUOUS", "NONE",
    "ADD_LABEL", "REMOVE_LABEL", "ADD_TIER", "DESIGNATE_REGION",
    "REMOVE_DECORATION", "SET_FIELD_TYPE",
]
