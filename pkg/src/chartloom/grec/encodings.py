"""Channel inference: which visual properties of rects and groups carry data.

Leaf rules follow the relation category of the leaf parents (packing implies
area, grid/stack with varying extents imply size, a one-directional grid
without gravity implies the cross position). Group levels pick up a size
channel only when the group's own layout leaves that dimension free.
"""

from __future__ import annotations

from typing import Optional

from ..config import DEFAULT_CONFIG, Config
from .model import (
    COLLECTION,
    GLYPH,
    GRIDS,
    HGRID,
    HSTACK,
    LEAF,
    PACKING,
    STACKS,
    TARGET_GLYPH_MEMBER,
    TARGET_LEVEL,
    TARGET_MARK,
    Encoding,
    GroupNode,
)

QUANT = "Quantitative"
CAT = "Categorical"


def _levels(root: GroupNode) -> list[list[GroupNode]]:
    out = [[root]]
    while any(n.children for n in out[-1]):
        nxt: list[GroupNode] = []
        for n in out[-1]:
            nxt.extend(n.children)
        out.append(nxt)
    return out


def _dim(box, dim: str) -> float:
    return box[2] - box[0] if dim == "width" else box[3] - box[1]


def _varies(values: list[float], tol: float) -> bool:
    return bool(values) and max(values) - min(values) > tol


def _free_dim(node: GroupNode, dim: str, tol: float) -> bool:
    """True when the node's own extent in ``dim`` is not derived from children."""
    if node.kind == LEAF:
        return True
    if node.kind == GLYPH:
        return False
    rel = node.relationship
    if rel is None:
        return False
    if rel.category == PACKING:
        return True
    flow_x = rel.category in (HSTACK, HGRID)
    if (dim == "width") == flow_x:
        return False  # flow extent is the children's sum
    sizes = [_dim(c.bbox, dim) for c in node.children]
    return not _varies(sizes, tol)  # children inherit a uniform cross extent


def _fill_field_type(decoration) -> str:
    legend = getattr(decoration, "legend", None) if decoration is not None else None
    kind = getattr(legend, "kind", None)
    if kind == "Continuous":
        return QUANT
    return CAT


def infer_encodings(root: GroupNode, forest: bool, decoration=None,
                    config: Config = DEFAULT_CONFIG) -> list[Encoding]:
    levels = _levels(root)
    leaf_depth = len(levels) - 1
    tol = config.eps_align
    encs: list[Encoding] = []

    # Data-encoded positions where merging aborted or no relation exists.
    for depth in range(leaf_depth):
        nodes = levels[depth]
        if not any(n.position_encoded and n.children for n in nodes):
            continue
        child_nodes = levels[depth + 1]
        if all(c.kind == LEAF for c in child_nodes):
            encs.append(Encoding("x", QUANT, TARGET_MARK, leaf_depth))
            encs.append(Encoding("y", QUANT, TARGET_MARK, leaf_depth))
        else:
            encs.append(Encoding("x", QUANT, TARGET_LEVEL, depth + 1))
            encs.append(Encoding("y", QUANT, TARGET_LEVEL, depth + 1))
        break

    # Group-level size channels, outermost first. Mixed levels (a stray leaf
    # among collections) carry no level-wide channel.
    for depth in range(1, leaf_depth):
        nodes = levels[depth]
        if any(n.kind == LEAF for n in nodes):
            continue
        parents = [p for p in levels[depth - 1] if p.children]
        rels = {p.relationship.category for p in parents
                if p.kind == COLLECTION and p.relationship}
        if not rels or not rels.issubset(set(STACKS) | set(GRIDS)):
            continue
        for dim in ("height", "width"):
            varies = any(
                _varies([_dim(c.bbox, dim) for c in p.children], tol)
                for p in parents if len(p.children) > 1
            )
            if varies and all(_free_dim(n, dim, tol) for n in nodes):
                encs.append(Encoding(dim, QUANT, TARGET_LEVEL, depth))

    # Leaf / glyph-member channels.
    leaf_parents = [p for p in levels[leaf_depth - 1] if p.children] if leaf_depth >= 1 else []
    glyph_parents = [p for p in leaf_parents if p.kind == GLYPH]
    if glyph_parents and len(glyph_parents) == len(leaf_parents):
        encs.extend(_glyph_member_encodings(levels, leaf_depth, config))
    elif leaf_parents:
        encs.extend(_leaf_encodings(leaf_parents, leaf_depth, tol))

    # Fill: distinct leaf colors mean the color carries data. Glyph charts are
    # exempt when member colors are structural (constant across glyphs).
    fills = [leaf.fill() for leaf in root.leaves()]
    fills = [f for f in fills if f]
    if len(set(fills)) >= 2 and not _structural_glyph_fills(glyph_parents, leaf_parents):
        encs.append(Encoding("fill", _fill_field_type(decoration), TARGET_MARK, leaf_depth))

    # Area after fill to mirror the reuse narrative order.
    encs.sort(key=lambda e: e.channel == "area")
    return _resolve_side_ambiguity(encs, leaf_depth)


def _structural_glyph_fills(glyph_parents, leaf_parents) -> bool:
    if not glyph_parents or len(glyph_parents) != len(leaf_parents):
        return False
    per_glyph = [tuple(sorted(filter(None, (m.fill() for m in g.children))))
                 for g in glyph_parents]
    return len(set(per_glyph)) == 1  # same palette per glyph: role colors, not data


def _leaf_encodings(parents: list[GroupNode], leaf_depth: int, tol: float) -> list[Encoding]:
    out: list[Encoding] = []
    cats = {p.relationship.category for p in parents if p.relationship}
    if PACKING in cats:
        out.append(Encoding("area", QUANT, TARGET_MARK, leaf_depth))
        return out
    if not cats or not cats.issubset(set(STACKS) | set(GRIDS)):
        return out  # relationship-free parents carry position channels instead
    for dim in ("width", "height"):
        if any(_varies([_dim(c.bbox, dim) for c in p.children], tol)
               for p in parents if len(p.children) > 1):
            out.append(Encoding(dim, QUANT, TARGET_MARK, leaf_depth))
    # Cross position: one-directional grid without gravity.
    grid_parents = [p for p in parents if p.relationship and p.relationship.category in GRIDS]
    for p in grid_parents:
        rel = p.relationship
        if rel.gravity is not None or len(p.children) < 2:
            continue
        if rel.category == HGRID:
            if _varies([c.bbox[1] for c in p.children], tol):
                out.append(Encoding("y", QUANT, TARGET_MARK, leaf_depth))
                break
        else:
            if _varies([c.bbox[0] for c in p.children], tol):
                out.append(Encoding("x", QUANT, TARGET_MARK, leaf_depth))
                break
    return out


def _glyph_member_encodings(levels, leaf_depth: int, config: Config) -> list[Encoding]:
    """Width/height and x/y rules applied per corresponding-member set.

    Members correspond across glyphs by fill color, falling back to size rank
    for repeated colors; sets that do not appear in every glyph are skipped.
    """
    tol = config.eps_align
    glyphs = [g for g in levels[leaf_depth - 1] if g.kind == GLYPH]
    out: list[Encoding] = []
    grand_rel = None
    if leaf_depth >= 2:
        holders = [h for h in levels[leaf_depth - 2] if h.children]
        rels = {h.relationship.category for h in holders if h.relationship}
        grand_rel = holders[0].relationship if len(rels) == 1 and holders[0].relationship else None

    colors: dict[str, list[GroupNode]] = {}
    for g in glyphs:
        for member in g.children:
            f = member.fill() or ""
            colors.setdefault(f, []).append(member)
    for color, members in sorted(colors.items()):
        if len(members) != len(glyphs):
            continue  # not one member per glyph: no corresponding set
        for dim in ("width", "height"):
            if _varies([_dim(m.bbox, dim) for m in members], tol):
                out.append(Encoding(dim, QUANT, TARGET_GLYPH_MEMBER, leaf_depth,
                                    member_color=color or None))
        if grand_rel is not None and grand_rel.category in GRIDS and grand_rel.gravity is None:
            axis = "y" if grand_rel.category == HGRID else "x"
            coord = 1 if axis == "y" else 0
            if _varies([m.bbox[coord] for m in members], tol):
                out.append(Encoding(axis, QUANT, TARGET_GLYPH_MEMBER, leaf_depth,
                                    member_color=color or None))
    return out


def _resolve_side_ambiguity(encs: list[Encoding], leaf_depth: int) -> list[Encoding]:
    """Interchangeable position/size pairs become side channels with options."""
    def swap(seq: list[Encoding], pos: str, size: str, lo: str, hi: str) -> list[Encoding]:
        pos_idx = next((i for i, e in enumerate(seq)
                        if e.channel == pos and e.target_kind == TARGET_MARK), None)
        size_idx = next((i for i, e in enumerate(seq)
                         if e.channel == size and e.target_kind == TARGET_MARK), None)
        if pos_idx is None or size_idx is None:
            return seq
        first, second = min(pos_idx, size_idx), max(pos_idx, size_idx)
        alts = [hi, lo, size]
        out: list[Encoding] = []
        for i, e in enumerate(seq):
            if i == first:
                out.append(Encoding(hi, QUANT, TARGET_MARK, leaf_depth, alternatives=alts))
                out.append(Encoding(lo, QUANT, TARGET_MARK, leaf_depth, alternatives=alts))
            elif i == second:
                continue
            else:
                out.append(e)
        return out

    encs = swap(encs, "y", "height", "bottomSide", "topSide")
    encs = swap(encs, "x", "width", "leftSide", "rightSide")
    return encs
