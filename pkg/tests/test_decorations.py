import pytest

from chartloom.corpus.builders import ARCHETYPES
from chartloom.corpus.generate import ChartSpec, generate_synthetic_chart
from chartloom.decorations import (
    detect_axes,
    detect_decorations,
    detect_legend,
    strip_decorations,
)
from chartloom.errors import EmptyScene
from chartloom.ingest.scene import filter_noise, normalize_scene


def pipeline_scene(spec):
    chart = generate_synthetic_chart(spec)
    return chart, filter_noise(normalize_scene(chart.svg))


@pytest.mark.parametrize("archetype", ARCHETYPES)
def test_detection_matches_generator_truth(archetype):
    chart, scene = pipeline_scene(ChartSpec(archetype, 1, "A"))
    model = detect_decorations(scene)
    assert model.summary() == chart.truth


def test_two_tier_axis_detected():
    chart, scene = pipeline_scene(ChartSpec("grouped_stacked", 1, "A"))
    model = detect_decorations(scene)
    assert len(model.x_axis.tiers) == 2
    assert len(model.x_axis.tiers[1]) < len(model.x_axis.tiers[0])


def test_no_text_means_no_axes(make_scene):
    scene = make_scene([(0, 0, 10, 50), (14, 20, 24, 50)])
    assert detect_axes(scene) == (None, None)
    assert detect_legend(scene).kind == "None"


def test_year_labels_read_as_date():
    chart, scene = pipeline_scene(ChartSpec("treemap_grouped_bar", 1, "A"))
    model = detect_decorations(scene)
    assert model.x_axis.field_types[0] == "Date"


def test_continuous_legend_records_stops():
    chart, scene = pipeline_scene(ChartSpec("heatmap", 1, "A"))
    model = detect_decorations(scene)
    assert model.legend.kind == "Continuous"
    assert len(model.legend.gradient_stops) >= 2
    assert model.legend.tick_values == sorted(model.legend.tick_values)


def test_ticks_are_only_short_lines():
    chart, scene = pipeline_scene(ChartSpec("bar", 2, "A"))
    model = detect_decorations(scene)
    rect_ids = {r.id for r in scene.rects()}
    for axis in (model.x_axis, model.y_axis):
        assert not (set(axis.tick_ids) & rect_ids)
        for tid in axis.tick_ids:
            el = scene.by_id(tid)
            assert el.kind == "Line"
            assert ((el.x2 - el.x1) ** 2 + (el.y2 - el.y1) ** 2) ** 0.5 <= 8.0


def test_numeric_domain_recorded():
    chart, scene = pipeline_scene(ChartSpec("bar", 1, "A"))
    model = detect_decorations(scene)
    assert model.y_axis.numeric_domain is not None
    lo, hi = model.y_axis.numeric_domain
    assert lo == 0 and hi > 0


class TestStrip:
    def test_only_marks_remain(self):
        chart, scene = pipeline_scene(ChartSpec("treemap_grouped_bar", 1, "A"))
        model = detect_decorations(scene)
        content = strip_decorations(scene, model)
        assert len(content.rects()) == len(chart.build.root.leaves())
        assert not content.texts()

    def test_gridlines_removed(self):
        chart, scene = pipeline_scene(ChartSpec("bar", 1, "A"))
        model = detect_decorations(scene)
        content = strip_decorations(scene, model)
        plot_w = max(r.bbox[2] for r in content.rects()) - min(r.bbox[0] for r in content.rects())
        for line in content.lines():
            assert abs(line.x2 - line.x1) < 0.8 * plot_w

    def test_output_disjoint_from_decoration_elements(self):
        chart, scene = pipeline_scene(ChartSpec("grouped_bar", 1, "A"))
        model = detect_decorations(scene)
        content = strip_decorations(scene, model)
        claimed_paths = {tuple(scene.by_id(i).source_path) for i in model.claimed_ids()}
        kept_paths = {tuple(e.source_path) for e in content.elements}
        assert not (claimed_paths & kept_paths)

    def test_empty_when_all_rects_are_decorations(self, make_scene):
        from chartloom.decorations.model import DecorationModel, LegendModel
        from chartloom.ingest.scene import KIND_TEXT, SceneElement
        scene = make_scene([(700, 20, 711, 31), (700, 40, 711, 51)],
                           fills=["#111111", "#222222"])
        scene.elements.append(SceneElement(2, KIND_TEXT, x=716, y=30, content="a"))
        scene.elements.append(SceneElement(3, KIND_TEXT, x=716, y=50, content="b"))
        legend = detect_legend(scene)
        assert legend.kind == "Discrete"
        model = DecorationModel(legend=legend)
        with pytest.raises(EmptyScene):
            strip_decorations(scene, model)
