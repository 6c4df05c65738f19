import pytest

from chartloom.corpus.builders import ARCHETYPES
from chartloom.corpus.generate import ChartSpec, deconstruct_svg, generate_synthetic_chart
from chartloom.reuse import (
    DataTable,
    check_compatibility,
    generate_sample_data,
    infer_schema,
)


def template_of(archetype, seed=1):
    chart = generate_synthetic_chart(ChartSpec(archetype, seed, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    return template


def test_diverging_needs_two_categorical_fields():
    schema = infer_schema(template_of("diverging_stacked"))
    assert schema.c_group == 2
    assert schema.min_categorical == 2


def test_treemap_grouped_bar_worked_counts():
    schema = infer_schema(template_of("treemap_grouped_bar"))
    assert schema.c_group == 4
    assert schema.min_categorical == 4
    # height aggregates the leaf quantity, so one numeric column suffices
    assert schema.min_quantitative == 1


def test_glyph_members_consume_no_grouping_field():
    schema = infer_schema(template_of("bullet"))
    assert schema.c_group == 1
    assert schema.min_quantitative == 2  # two member width channels


def test_max_rule_holds_on_every_corpus_chart():
    for archetype in ARCHETYPES:
        schema = infer_schema(template_of(archetype))
        assert schema.min_categorical == max(schema.c_group, schema.c_encode)
        assert schema.min_quantitative == schema.q_encode


class TestSampleData:
    def test_cross_product_row_count(self):
        template = template_of("grouped_bar")
        schema = infer_schema(template)
        table = generate_sample_data(schema, template)
        cards = [len(set(c.values)) for c in table.columns
                 if c.field_type != "Quantitative"]
        expected_rows = 1
        for c in cards:
            expected_rows *= c
        assert table.row_count == expected_rows

    def test_labels_seeded_from_axis_and_legend(self):
        template = template_of("treemap_grouped_bar")
        schema = infer_schema(template)
        table = generate_sample_data(schema, template)
        all_values = {v for c in table.columns for v in c.values if isinstance(v, str)}
        assert {"1978", "1985", "1993", "2001"} <= all_values   # x axis labels
        assert "Asia" in all_values                              # legend entries

    def test_sample_is_always_self_compatible(self):
        for archetype in ARCHETYPES + ["treemap_grouped_bar"]:
            template = template_of(archetype)
            schema = infer_schema(template)
            table = generate_sample_data(schema, template)
            report = check_compatibility(schema, table)
            assert report.ok, (archetype, report.to_dict())

    def test_zero_categorical_schema_still_joinable(self):
        from chartloom.reuse.schema import DataSchema
        template = template_of("bar")
        table = generate_sample_data(DataSchema(0, 0, 1), template)
        assert len(table.categorical_names()) >= 1  # synthesized index column
        assert len(table.quantitative_names()) == 1


class TestCompatibility:
    def test_enough_columns_ok(self):
        from chartloom.reuse.schema import DataSchema
        table = DataTable.from_rows([
            {"a": "x", "b": "y", "c": "z", "v": 1.0, "w": 2.0},
        ])
        report = check_compatibility(DataSchema(2, 1, 1), table)
        assert report.ok and not report.warnings

    def test_missing_counts_reported_and_dismissible(self):
        from chartloom.reuse.schema import DataSchema
        table = DataTable.from_rows([{"a": "x", "v": 1.0}])
        report = check_compatibility(DataSchema(2, 1, 1), table)
        assert not report.ok
        assert report.missing_categorical == 1
        assert report.missing_quantitative == 0
        assert report.dismissible

    def test_date_columns_count_as_categorical(self):
        from chartloom.reuse.schema import DataSchema
        table = DataTable.from_rows([
            {"year": "1978", "v": 1.0}, {"year": "1985", "v": 2.0},
        ])
        assert table.column("year").field_type == "Date"
        report = check_compatibility(DataSchema(1, 0, 1), table)
        assert report.ok
