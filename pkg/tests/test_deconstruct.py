import numpy as np
import pytest

from chartloom.corpus.generate import ChartSpec, deconstruct_svg, generate_synthetic_chart
from chartloom.errors import EmptyScene
from chartloom.grec.deconstruct import deconstruct
from chartloom.ingest.scene import NormalizedScene

from conftest import rect_scene


def test_treemap_grouped_bar_worked_structure():
    """Top groups in a 1-row grid, two bars per group, nested packing."""
    chart = generate_synthetic_chart(ChartSpec("treemap_grouped_bar", 1, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    root = template.root
    assert root.relationship.category == "HGrid"
    assert (root.relationship.rows, root.relationship.cols) == (1, 4)
    for year_group in root.children:
        assert year_group.relationship.category == "HGrid"
        assert len(year_group.children) == 2
        for bar in year_group.children:
            assert bar.relationship.category == "Packing"
            for pack in bar.children:
                assert pack.relationship.category == "Packing"
                assert all(leaf.kind == "Leaf" for leaf in pack.children)


def test_single_bar_chart():
    scene = rect_scene([(0, 40, 20, 100), (26, 10, 46, 100), (52, 70, 72, 100)])
    t = deconstruct(scene)
    assert t.root.relationship.category == "HGrid"
    assert t.root.relationship.gravity == "Bottom"
    assert sorted(e.channel for e in t.encodings) == ["height"]


def test_superimposed_charts_fall_back_with_warning():
    boxes = [
        (0, 20, 12, 50), (8, 0, 30, 25),
        (20, 30, 32, 60), (30, 10, 50, 35),
    ]
    t = deconstruct(rect_scene(boxes))
    assert t.root.position_encoded
    assert all(leaf.position_encoded for leaf in t.root.children)
    assert t.warnings and "not supported" in t.warnings[0]
    assert sorted(e.channel for e in t.encodings) == ["x", "y"]


def test_leaf_partition_invariant():
    """Leaves of the output tree are exactly the input rect ids, once each."""
    for archetype in ("bar", "stacked_bar", "treemap", "bullet", "small_multiples"):
        chart = generate_synthetic_chart(ChartSpec(archetype, 1, "A"))
        template, _, _, content = deconstruct_svg(chart.svg)
        leaf_ids = [leaf.leaf_id for leaf in template.root.leaves()]
        assert sorted(leaf_ids) == [r.id for r in content.rects()]
        assert len(set(leaf_ids)) == len(leaf_ids)


def test_permutation_invariance():
    """Shuffling element order yields an isomorphic template."""
    rng = np.random.default_rng(5)
    chart = generate_synthetic_chart(ChartSpec("grouped_stacked", 1, "A"))
    template, _, _, content = deconstruct_svg(chart.svg)
    base = template.structure_summary()
    for _ in range(3):
        order = rng.permutation(len(content.elements))
        shuffled = content.reindexed([content.elements[i] for i in order])
        assert deconstruct(shuffled).structure_summary() == base


def test_empty_scene_rejected():
    with pytest.raises(EmptyScene):
        deconstruct(NormalizedScene([], (0, 0, 100, 100)))


def test_single_rect_scene():
    t = deconstruct(rect_scene([(0, 0, 10, 10)]))
    assert t.leaf_depth() == 1
    assert len(t.root.leaves()) == 1


def test_fallback_totality_random_scenes():
    """Deconstruction never fails on a non-empty rect scene."""
    rng = np.random.default_rng(77)
    for _ in range(40):
        n = int(rng.integers(1, 12))
        boxes = []
        for _ in range(n):
            x, y = rng.uniform(0, 150, 2)
            w, h = rng.uniform(2, 40, 2)
            boxes.append((x, y, x + w, y + h))
        t = deconstruct(rect_scene(boxes))
        assert len(t.root.leaves()) == n


def test_template_json_round_trip():
    chart = generate_synthetic_chart(ChartSpec("treemap_grouped_bar", 1, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    from chartloom.grec.model import GrecTemplate
    back = GrecTemplate.from_json(template.to_json())
    assert back.structure_summary() == template.structure_summary()
    assert back.to_json() == template.to_json()
