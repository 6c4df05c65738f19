"""Deconstruction pipeline: stripped scene content to a reusable template."""

from __future__ import annotations

from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from ..errors import EmptyScene, OverlappingCollections
from ..geometry import union_all
from ..ingest.scene import NormalizedScene
from .cluster import (
    cluster_lowest_level,
    extract_common_relationship,
    merge_groups_iterative,
    _geom_key,
)
from .constraints import detect_constraints
from .encodings import infer_encodings
from .matrix import build_distance_matrix
from .model import COLLECTION, LEAF, GrecTemplate, GroupNode

_LEAF_STYLE_KEYS = ("fill", "stroke", "stroke-width", "opacity", "fill-opacity")


def _leaf_nodes(scene: NormalizedScene) -> list[GroupNode]:
    leaves = []
    for el in scene.rects():
        style = {k: v for k, v in el.style.items() if k in _LEAF_STYLE_KEYS}
        leaves.append(GroupNode(kind=LEAF, leaf_id=el.id, leaf_style=style, bbox=el.bbox))
    leaves.sort(key=lambda leaf: _geom_key(leaf.bbox))
    return leaves


def _position_encoded_root(leaves: list[GroupNode]) -> GroupNode:
    for leaf in leaves:
        leaf.position_encoded = True
    return GroupNode(
        kind=COLLECTION,
        children=leaves,
        bbox=union_all([leaf.bbox for leaf in leaves]),
        position_encoded=True,
    )


def deconstruct(scene: NormalizedScene, decoration=None,
                config: Config = DEFAULT_CONFIG) -> GrecTemplate:
    """Distance matrix, common relationship, clustering, merging, inference.

    Never fails on a non-empty rect scene: unsupported arrangements fall back
    to position-encoded grouping with a warning on the template.
    """
    leaves = _leaf_nodes(scene)
    if not leaves:
        raise EmptyScene("deconstruction needs at least one rectangle")
    warnings: list[str] = []
    forest = False
    if len(leaves) == 1:
        root = GroupNode(kind=COLLECTION, children=leaves, bbox=leaves[0].bbox)
    else:
        boxes = [leaf.bbox for leaf in leaves]
        m = build_distance_matrix(boxes, config)
        common = extract_common_relationship(m, config)
        try:
            groups = cluster_lowest_level(leaves, common, m, config)
            root, forest, merge_warnings = merge_groups_iterative(groups, config)
            warnings.extend(merge_warnings)
        except OverlappingCollections:
            warnings.append(
                "collections overlap (superimposed or overloaded design is not "
                "supported); grouping everything with data-encoded positions"
            )
            root = _position_encoded_root(leaves)

    template = GrecTemplate(
        root=root,
        forest=forest,
        content_box=union_all([leaf.bbox for leaf in root.leaves()]),
        warnings=warnings,
        config=config,
    )
    template.encodings = infer_encodings(root, forest, decoration, config)
    template.constraints = detect_constraints(root, config)
    if decoration is not None and hasattr(decoration, "summary"):
        template.decoration = decoration.summary()
    return template
