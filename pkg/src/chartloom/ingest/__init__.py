from .pathdata import PathLine, PathRect, path_to_shape
from .scene import (
    KIND_LINE,
    KIND_OTHER,
    KIND_RECT,
    KIND_TEXT,
    NormalizedScene,
    SceneElement,
    filter_noise,
    normalize_color,
    normalize_scene,
)
from .svgdoc import RawNode, parse_svg, resolve_absolute, viewbox_of
from .transforms import IDENTITY, AffineMatrix, parse_transform

__all__ = [
    "AffineMatrix", "IDENTITY", "parse_transform",
    "RawNode", "parse_svg", "resolve_absolute", "viewbox_of",
    "PathRect", "PathLine", "path_to_shape",
    "SceneElement", "NormalizedScene", "normalize_scene", "filter_noise",
    "normalize_color",
    "KIND_RECT", "KIND_LINE", "KIND_TEXT", "KIND_OTHER",
]
