"""Small-instance clustering versus exhaustive partition enumeration.

The oracle enumerates every set partition of the rects, keeps those whose
multi-rect blocks all satisfy the extracted common relationship with disjoint
hulls, and ranks by block count; the greedy clustering must land on a
minimum-block partition. Scenes without a common relationship must be
explained by overlap components or the position-encoded fallback.
"""

import numpy as np
import pytest

from chartloom.errors import OverlappingCollections
from chartloom.grec import (
    build_distance_matrix,
    cluster_lowest_level,
    extract_common_relationship,
)
from chartloom.grec.model import GLYPH, LEAF, BIT_OF, GroupNode

from oracles import best_partitions, overlap

CASES = 100


def random_scene(rng) -> list[tuple]:
    """Mix of mini stacks, grids, packed clusters, glyph piles and scatter."""
    kind = rng.choice(["hstack", "vstack", "hgrid", "vgrid", "pack", "glyph",
                       "scatter", "two_rows"])
    n = int(rng.integers(2, 7))
    boxes = []
    if kind == "hstack":
        x, h = 0.0, float(rng.integers(8, 30))
        for _ in range(n):
            w = float(rng.integers(5, 25))
            boxes.append((x, 0.0, x + w, h))
            x += w
    elif kind == "vstack":
        y, w = 0.0, float(rng.integers(8, 30))
        for _ in range(n):
            h = float(rng.integers(5, 25))
            boxes.append((0.0, y, w, y + h))
            y += h
    elif kind in ("hgrid", "vgrid"):
        gap = float(rng.integers(2, 12))
        pos = 0.0
        for _ in range(n):
            size = float(rng.integers(6, 20))
            if kind == "hgrid":
                boxes.append((pos, 0.0, pos + 10.0, size))
            else:
                boxes.append((0.0, pos, size, pos + 10.0))
            pos += 10.0 + gap if kind == "hgrid" else 10.0 + gap
    elif kind == "pack":
        gap = float(rng.integers(2, 5))
        cell = float(rng.integers(8, 20))
        cols = 2 if n > 2 else n
        for k in range(n):
            r, c = divmod(k, cols)
            x, y = c * (cell + gap), r * (cell + gap)
            boxes.append((x, y, x + cell, y + cell))
    elif kind == "glyph":
        mid = 20.0
        for k in range(n):
            w = 40.0 - 5 * k
            h = 30.0 - 4 * k
            boxes.append((0.0, mid - h / 2, w, mid + h / 2))
    elif kind == "two_rows":
        x = 0.0
        for _ in range(max(n // 2, 1)):
            w = float(rng.integers(8, 20))
            boxes.append((x, 0.0, x + w, 12.0))
            x += w
        x = 0.0
        for _ in range(n - max(n // 2, 1)):
            w = float(rng.integers(8, 20))
            boxes.append((x, 30.0, x + w, 42.0))
            x += w
    else:
        placed = 0
        while placed < n:
            x, y = rng.uniform(0, 120, 2)
            box = (x, y, x + float(rng.integers(5, 15)), y + float(rng.integers(5, 15)))
            boxes.append(box)
            placed += 1
    return boxes[:6]


def test_greedy_matches_bruteforce_top_rank():
    rng = np.random.default_rng(20240817)
    checked = {"common": 0, "glyph": 0, "fallback": 0}
    for case in range(CASES):
        boxes = random_scene(rng)
        if len(boxes) < 2:
            continue
        m = build_distance_matrix(boxes)
        common = extract_common_relationship(m)
        leaves = [GroupNode(kind=LEAF, leaf_id=i, bbox=b) for i, b in enumerate(boxes)]
        if common is not None:
            tops = best_partitions(boxes, common)
            try:
                groups = cluster_lowest_level(leaves, common, m)
            except OverlappingCollections:
                assert not tops, f"case {case}: oracle found a valid partition"
                continue
            got = sorted(sorted(l.leaf_id for l in g.leaves()) for g in groups)
            assert tops, f"case {case}: greedy grouped but oracle found nothing"
            best_count = len(tops[0])
            assert len(got) == best_count, (
                f"case {case} ({common}): greedy used {len(got)} blocks, "
                f"oracle minimum is {best_count}")
            assert got in [sorted(sorted(b) for b in p) for p in tops], (
                f"case {case}: {got} not among top-ranked partitions")
            checked["common"] += 1
        else:
            groups = cluster_lowest_level(leaves, common, m)
            if any(g.kind == GLYPH for g in groups):
                # overlap components are the oracle here
                comps = _overlap_components(boxes)
                got = sorted(sorted(l.leaf_id for l in g.leaves()) for g in groups)
                assert got == comps
                checked["glyph"] += 1
            else:
                assert len(groups) == 1 and groups[0].position_encoded
                # brute-force confirmation: no category is common
                for cat in BIT_OF:
                    assert not _has_partner_everywhere(m, cat)
                checked["fallback"] += 1
    assert checked["common"] >= 40
    assert checked["glyph"] >= 5
    assert checked["fallback"] >= 5


def _overlap_components(boxes):
    n = len(boxes)
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if overlap(boxes[i], boxes[j]):
                adj[i].add(j)
                adj[j].add(i)
    seen, comps = set(), []
    for s in range(n):
        if s in seen:
            continue
        comp, stack = [], [s]
        seen.add(s)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nb in adj[cur]:
                if nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        comps.append(sorted(comp))
    return sorted(comps)


def _has_partner_everywhere(m, cat) -> bool:
    from chartloom.grec import backend
    bits = backend.item_bits(m.cats, m.n)
    return all(b & BIT_OF[cat] for b in bits)
