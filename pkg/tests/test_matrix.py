import numpy as np
import pytest

from chartloom.config import Config
from chartloom.grec import (
    HSTACK,
    PACKING,
    build_distance_matrix,
    pair_distance,
    universal_gap,
)
from chartloom.render.layouts import layout_pack


def test_abutting_rects_form_horizontal_stack():
    boxes = [(0, 0, 10, 10), (10, 0, 25, 10)]
    rel = pair_distance(boxes[0], boxes[1], boxes)
    assert rel.has(HSTACK)
    assert rel.gap == 0


def test_overlapping_rects_are_minus_one():
    boxes = [(0, 0, 20, 10), (5, 2, 15, 8)]
    rel = pair_distance(boxes[0], boxes[1], boxes)
    assert rel.labels() == {"-1"}


def test_inconsistent_gaps_rule_out_packing():
    # one rect sees neighbor gaps of 2 px and 7 px: no universal gap exists
    boxes = [(0, 0, 10, 10), (12, 11, 22, 21), (29, 23, 39, 33)]
    assert universal_gap(boxes) is None
    assert pair_distance(boxes[0], boxes[1], boxes).labels() == {"X"}
    assert pair_distance(boxes[1], boxes[2], boxes).labels() == {"X"}


def test_two_stacked_rects_single_cell():
    boxes = [(0, 0, 10, 8), (0, 8, 10, 20)]
    m = build_distance_matrix(boxes)
    assert m.labels(0, 1) == {"VS"}


def test_treemap_quadrant_cells_all_contain_packing():
    # uniform quadrant: even the diagonal pairs share the 2 px gap
    boxes = layout_pack((0, 0, 100, 100), [2.0, 2.0, 2.0, 2.0], gap=2.0)
    m = build_distance_matrix(boxes)
    for i in range(4):
        for j in range(i + 1, 4):
            assert "P" in m.labels(i, j), (i, j, m.labels(i, j))


def test_union_cleanliness_blocks_spanning_pairs():
    # three bars in a row: the outer pair's union contains the middle bar
    boxes = [(0, 0, 10, 30), (14, 5, 24, 30), (28, 0, 38, 30)]
    m = build_distance_matrix(boxes)
    assert "HG" in m.labels(0, 1)
    assert "HG" in m.labels(1, 2)
    assert m.labels(0, 2) == {"X"}


def test_matrix_symmetry_against_reference():
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(2, 8))
        boxes = []
        for _ in range(n):
            x, y = rng.uniform(0, 100, 2)
            w, h = rng.uniform(3, 25, 2)
            boxes.append((x, y, x + w, y + h))
        m = build_distance_matrix(boxes)
        gstar = m.universal_gap
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                ab = pair_distance(boxes[i], boxes[j], boxes, gstar=gstar)
                ba = pair_distance(boxes[j], boxes[i], boxes, gstar=gstar)
                assert ab.labels() == ba.labels()
                assert m.labels(i, j) == ab.labels()


def test_universal_gap_must_stay_under_cap():
    # the documented failure mode: 6 px treemap gaps exceed the 5 px cap
    boxes = layout_pack((0, 0, 120, 90), [4.0, 3.0, 2.0, 2.0], gap=6.0)
    assert universal_gap(boxes) is None
    tighter = layout_pack((0, 0, 120, 90), [4.0, 3.0, 2.0, 2.0], gap=4.0)
    g = universal_gap(tighter)
    assert g is not None and abs(g - 4.0) < 0.2


def test_config_thresholds_are_respected():
    wide = Config(packing_gap_cap=8.0)
    boxes = layout_pack((0, 0, 120, 90), [4.0, 3.0, 2.0, 2.0], gap=6.0)
    assert universal_gap(boxes, wide) is not None
