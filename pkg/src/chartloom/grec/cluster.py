"""Bottom-up grouping: common relationship extraction, greedy merging, refinement.

The same machinery runs at the rectangle level and, through iterative
merging, over group hulls; only the items change.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_CONFIG, Config
from ..errors import OverlappingCollections
from ..geometry import Box, boxes_overlap, union_all
from . import backend
from .model import (
    BIT_OF,
    BIT_OV,
    COLLECTION,
    GLYPH,
    GRIDS,
    HGRID,
    HSTACK,
    LEAF,
    PACKING,
    STACKS,
    VGRID,
    VSTACK,
    DistanceMatrix,
    GroupNode,
    RelationshipDescriptor,
)

_PRIORITY = (HSTACK, VSTACK, HGRID, VGRID, PACKING)


def _geom_key(box: Box):
    return (round(box[1], 3), round(box[0], 3), round(box[3], 3), round(box[2], 3))


def extract_common_relationship(m: DistanceMatrix,
                                config: Config = DEFAULT_CONFIG) -> Optional[str]:
    """Category every item has at least one partner for; stack > grid > packing.

    Orientation ties inside one family go to the orientation with the more
    consistent gaps, horizontal winning exact ties.
    """
    bits = backend.item_bits(m.cats, m.n)
    common = [c for c in _PRIORITY if all(b & BIT_OF[c] for b in bits)]
    if not common:
        return None

    def gap_spread(cat: str) -> float:
        mask = (m.cats & BIT_OF[cat]) != 0
        if not mask.any():
            return float("inf")
        vals = m.gaps[mask]
        return float(vals.max() - vals.min())

    for family in (STACKS, GRIDS):
        hits = [c for c in common if c in family]
        if len(hits) == 2:
            h, v = family
            return h if gap_spread(h) <= gap_spread(v) else v
        if hits:
            return hits[0]
    return common[0]  # packing


def _edges_for(m: DistanceMatrix, category: str) -> dict[int, list[tuple[int, float]]]:
    bit = BIT_OF[category]
    idx = np.nonzero((m.cats & bit) != 0)[0]
    out: dict[int, list[tuple[int, float]]] = {}
    n = m.n
    # invert condensed indices in bulk
    for k in idx:
        i = int(n - 2 - int((np.sqrt(-8 * k + 4 * n * (n - 1) - 7) - 1) / 2))
        base = i * (2 * n - i - 1) // 2
        j = int(k - base + i + 1)
        g = float(m.gaps[k])
        out.setdefault(i, []).append((j, g))
        out.setdefault(j, []).append((i, g))
    return out


def grow_collections(boxes: Sequence[Box], category: str, m: DistanceMatrix,
                     config: Config = DEFAULT_CONFIG) -> list[list[int]]:
    """Greedy growth: seed with the first qualifying pair, extend while the
    relationship (category + gap parameter) is preserved and no member overlaps.

    Seeding is determinized: the qualifying pair with the smallest gap wins,
    ties broken by the top-left (y, x) ordering. Smallest-gap-first recovers
    the innermost grouping of nested charts (inner gaps are tighter than the
    spacing between groups) and makes the partition independent of input
    order.
    """
    n = len(boxes)
    edges = _edges_for(m, category)
    order = sorted(range(n), key=lambda i: _geom_key(boxes[i]))
    rank = {i: r for r, i in enumerate(order)}
    unassigned = set(range(n))
    blocks: list[list[int]] = []

    while True:
        seed = None
        best_key = None
        for i in order:
            if i not in unassigned or i not in edges:
                continue
            for j, g in edges[i]:
                if j not in unassigned:
                    continue
                key = (round(g, 6), rank[i], rank[j])
                if best_key is None or key < best_key:
                    best_key = key
                    seed = (i, j)
        if seed is None:
            break
        i, j = seed
        gap0 = best_key[0]
        block = {i, j}
        while True:
            candidates = set()
            for member in block:
                for p, g in edges.get(member, ()):
                    if p in unassigned and p not in block and abs(g - gap0) < config.eps_gap:
                        candidates.add(p)
            pick = None
            for c in sorted(candidates, key=lambda p: rank[p]):
                if not any(boxes_overlap(boxes[c], boxes[b]) for b in block):
                    pick = c
                    break
            if pick is None:
                break
            block.add(pick)
        blocks.append(sorted(block, key=lambda p: rank[p]))
        unassigned -= block
    for i in order:
        if i in unassigned:
            blocks.append([i])
    return blocks


def _check_disjoint(hulls: list[Box]) -> None:
    for i in range(len(hulls)):
        for j in range(i + 1, len(hulls)):
            if boxes_overlap(hulls[i], hulls[j]):
                raise OverlappingCollections(f"collections {i} and {j} overlap")


def _overlap_components(m: DistanceMatrix) -> list[list[int]]:
    adj: dict[int, set[int]] = {i: set() for i in range(m.n)}
    n = m.n
    ks = np.nonzero((m.cats & BIT_OV) != 0)[0]
    for k in ks:
        i = int(n - 2 - int((np.sqrt(-8 * k + 4 * n * (n - 1) - 7) - 1) / 2))
        base = i * (2 * n - i - 1) // 2
        j = int(k - base + i + 1)
        adj[i].add(j)
        adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    return comps


def refine_relationship(group: GroupNode, config: Config = DEFAULT_CONFIG,
                        universal_gap: Optional[float] = None) -> RelationshipDescriptor:
    """Fill rows/cols, measured gaps, geometric child order and gravity."""
    cat = group.relationship.category if group.relationship else None
    if cat is None:
        raise ValueError("refine_relationship needs a category on the group")
    children = group.children
    boxes = [c.bbox for c in children]
    n = len(children)

    def sort_children(axis: int):
        idx = sorted(range(n), key=lambda i: (boxes[i][axis], _geom_key(boxes[i])))
        group.children = [children[i] for i in idx]
        return [boxes[i] for i in idx]

    desc = RelationshipDescriptor(category=cat, order=list(range(n)))
    if cat in (HSTACK, HGRID):
        sorted_boxes = sort_children(0)
        gaps = [sorted_boxes[k + 1][0] - sorted_boxes[k][2] for k in range(n - 1)]
        mean_gap = float(np.mean(gaps)) if gaps else 0.0
        if cat == HSTACK:
            desc.gap = max(mean_gap, 0.0)
        else:
            desc.gap_x = mean_gap
            desc.rows, desc.cols = 1, n
            desc.gravity = _gravity(sorted_boxes, axis="y", config=config)
    elif cat in (VSTACK, VGRID):
        sorted_boxes = sort_children(1)
        gaps = [sorted_boxes[k + 1][1] - sorted_boxes[k][3] for k in range(n - 1)]
        mean_gap = float(np.mean(gaps)) if gaps else 0.0
        if cat == VSTACK:
            desc.gap = max(mean_gap, 0.0)
        else:
            desc.gap_y = mean_gap
            desc.rows, desc.cols = n, 1
            desc.gravity = _gravity(sorted_boxes, axis="x", config=config)
    elif cat == PACKING:
        sort_children(1)
        if universal_gap is not None:
            desc.gap = universal_gap
        else:
            from .matrix import universal_gap as ugap
            g = ugap([c.bbox for c in group.children], config)
            desc.gap = g if g is not None else 0.0
    group.relationship = desc
    return desc


def _gravity(boxes: list[Box], axis: str, config: Config) -> Optional[str]:
    """Shared aligned edge or center across children on the grid's free axis."""
    tol = config.eps_align
    if axis == "y":
        lows = [b[1] for b in boxes]
        highs = [b[3] for b in boxes]
        names = ("Top", "Bottom", "CenterV")
    else:
        lows = [b[0] for b in boxes]
        highs = [b[2] for b in boxes]
        names = ("Left", "Right", "CenterH")
    centers = [(l + h) / 2 for l, h in zip(lows, highs)]

    def shared(vals):
        return max(vals) - min(vals) <= tol

    low_s, high_s, center_s = shared(lows), shared(highs), shared(centers)
    if low_s and high_s:
        return None  # uniform cross extents: any anchor is equivalent
    if low_s:
        return names[0]
    if high_s:
        return names[1]
    if center_s:
        return names[2]
    return None


def cluster_lowest_level(leaves: list[GroupNode], common: Optional[str],
                         m: DistanceMatrix,
                         config: Config = DEFAULT_CONFIG) -> list[GroupNode]:
    """Form the lowest-level collections or glyphs.

    With a common relationship, greedy growth builds collections; with
    overlaps and no common relationship, overlap components become glyphs;
    otherwise one position-encoded group holds everything. Raises
    OverlappingCollections when the resulting hulls intersect.
    """
    boxes = [leaf.bbox for leaf in leaves]
    if common is not None:
        blocks = grow_collections(boxes, common, m, config)
        out: list[GroupNode] = []
        hulls = []
        for block in blocks:
            if len(block) == 1:
                out.append(leaves[block[0]])
                hulls.append(boxes[block[0]])
                continue
            node = GroupNode(
                kind=COLLECTION,
                children=[leaves[i] for i in block],
                relationship=RelationshipDescriptor(category=common),
                bbox=union_all([boxes[i] for i in block]),
            )
            refine_relationship(node, config, universal_gap=m.universal_gap)
            out.append(node)
            hulls.append(node.bbox)
        _check_disjoint(hulls)
        return out

    if any((m.cats & BIT_OV) != 0):
        comps = _overlap_components(m)
        out = []
        hulls = []
        for comp in comps:
            if len(comp) == 1:
                out.append(leaves[comp[0]])
                hulls.append(boxes[comp[0]])
            else:
                members = sorted((leaves[i] for i in comp), key=lambda g: _geom_key(g.bbox))
                node = GroupNode(kind=GLYPH, children=members,
                                 bbox=union_all([boxes[i] for i in comp]))
                out.append(node)
                hulls.append(node.bbox)
        _check_disjoint(hulls)
        return out

    root = GroupNode(
        kind=COLLECTION,
        children=sorted(leaves, key=lambda g: _geom_key(g.bbox)),
        bbox=union_all(boxes),
        position_encoded=True,
    )
    for child in root.children:
        child.position_encoded = True
    return [root]


def merge_groups_iterative(groups: list[GroupNode],
                           config: Config = DEFAULT_CONFIG) -> tuple[GroupNode, bool, list[str]]:
    """Recursively merge groups bottom-up until one root remains or merging aborts.

    Returns (root, forest, warnings). On abort every current root is marked
    position-encoded and wrapped in a relationship-free forest root.
    """
    from .matrix import build_distance_matrix

    warnings: list[str] = []
    current = list(groups)
    while len(current) > 1:
        boxes = [g.bbox for g in current]
        m = build_distance_matrix(boxes, config)
        common = extract_common_relationship(m, config)
        if common is None:
            warnings.append("no common relationship between groups; positions treated as data-encoded")
            break
        blocks = grow_collections(boxes, common, m, config)
        if all(len(b) == 1 for b in blocks):
            warnings.append("group merging made no progress; positions treated as data-encoded")
            break
        try:
            hulls = [union_all([boxes[i] for i in b]) for b in blocks]
            _check_disjoint(hulls)
        except OverlappingCollections:
            warnings.append("merged collections overlap; positions treated as data-encoded")
            break
        nxt: list[GroupNode] = []
        for block in blocks:
            if len(block) == 1:
                nxt.append(current[block[0]])
                continue
            node = GroupNode(
                kind=COLLECTION,
                children=[current[i] for i in block],
                relationship=RelationshipDescriptor(category=common),
                bbox=union_all([boxes[i] for i in block]),
            )
            refine_relationship(node, config, universal_gap=m.universal_gap)
            nxt.append(node)
        current = sorted(nxt, key=lambda g: _geom_key(g.bbox))
    if len(current) == 1:
        return current[0], False, warnings
    for g in current:
        g.position_encoded = True
    wrapper = GroupNode(
        kind=COLLECTION,
        children=sorted(current, key=lambda g: _geom_key(g.bbox)),
        bbox=union_all([g.bbox for g in current]),
        position_encoded=True,
    )
    return wrapper, True, warnings
