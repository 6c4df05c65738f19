from .cluster import (
    cluster_lowest_level,
    extract_common_relationship,
    grow_collections,
    merge_groups_iterative,
    refine_relationship,
)
from .constraints import detect_constraints
from .deconstruct import deconstruct
from .encodings import infer_encodings
from .matrix import build_distance_matrix, pair_distance, universal_gap
from .model import (
    COLLECTION,
    GLYPH,
    HGRID,
    HSTACK,
    LEAF,
    NULL,
    OVERLAPPING,
    PACKING,
    VGRID,
    VSTACK,
    DistanceMatrix,
    Encoding,
    GraphicalConstraint,
    GrecTemplate,
    GroupNode,
    RelationSet,
    RelationshipDescriptor,
)

__all__ = [
    "pair_distance", "build_distance_matrix", "universal_gap",
    "extract_common_relationship", "grow_collections", "cluster_lowest_level",
    "refine_relationship", "merge_groups_iterative",
    "infer_encodings", "detect_constraints", "deconstruct",
    "DistanceMatrix", "RelationSet", "RelationshipDescriptor", "GroupNode",
    "Encoding", "GraphicalConstraint", "GrecTemplate",
    "HSTACK", "VSTACK", "HGRID", "VGRID", "PACKING", "OVERLAPPING", "NULL",
    "COLLECTION", "GLYPH", "LEAF",
]
