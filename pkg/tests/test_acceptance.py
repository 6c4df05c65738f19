"""Acceptance criteria, one test per criterion, one printed verdict line each.

Tolerances are pinned here:
  1. worked-segment matrices and hierarchies exact, runtime < 1 s
  2. corpus round trip >= 95% of 72 charts, < 30 s total
  3. correction closure on all five seeded mistake classes
  4. channel inference rules, including the no-gravity position requirement
  5. schema arithmetic (diverging 2 levels, nested treemap bar 4 levels,
     min-categorical max rule, sample data self-compatibility)
  6. 1,000-rect deconstruction < 1 s, 8,000-rect heatmap < 10 s
  7. scripted wizard replay: instantiated structure and byte-equal CLI/HTTP
  8. greedy clustering among brute-force top-ranked partitions (100 cases)
"""

import json
import time
import xml.etree.ElementTree as ET

import pytest

import scenes
from chartloom.corpus.builders import build_heatmap
from chartloom.corpus.emit import emit_chart
from chartloom.corpus.generate import (
    ChartSpec,
    build_corrections,
    corpus_specs,
    deconstruct_svg,
    error_specs,
    generate_synthetic_chart,
    score_corpus,
)
from chartloom.decorations import apply_corrections, detect_decorations, strip_decorations
from chartloom.grec import (
    HSTACK,
    build_distance_matrix,
    cluster_lowest_level,
    extract_common_relationship,
    merge_groups_iterative,
)
from chartloom.grec.deconstruct import deconstruct
from chartloom.grec.model import LEAF, GroupNode
from chartloom.ingest.scene import filter_noise, normalize_scene
from chartloom.reuse import DataTable, ReuseSession, check_compatibility, \
    generate_sample_data, infer_schema

from conftest import rect_scene


def verdict(name: str, ok: bool, detail: str = ""):
    print(f"\n[{'PASS' if ok else 'FAIL'}] {name}" + (f"  ({detail})" if detail else ""))
    assert ok, f"{name}: {detail}"


# ------------------------------------------------------------- criterion 1

def test_worked_segment_matrices_and_hierarchies():
    t0 = time.perf_counter()
    failures = []

    for name, builder in (("diverging", scenes.diverging_segment),
                          ("marimekko", scenes.marimekko_segment),
                          ("glyph", scenes.glyph_segment),
                          ("scattered", scenes.scattered_segment)):
        boxes, exp = builder()
        m = build_distance_matrix(boxes)
        for (i, j), label in exp["cells"].items():
            if label not in m.labels(i, j):
                failures.append(f"{name} cell {(i, j)}: {m.labels(i, j)} lacks {label}")
        if exp.get("hs_common"):
            for i in range(len(boxes)):
                if not any(m.cell(i, j).has(HSTACK)
                           for j in range(len(boxes)) if j != i):
                    failures.append(f"{name}: row {i} lacks a horizontal stack partner")
        common = extract_common_relationship(m)
        leaves = [GroupNode(kind=LEAF, leaf_id=i, bbox=b) for i, b in enumerate(boxes)]
        groups = cluster_lowest_level(leaves, common, m)
        if "clusters" in exp:
            got = sorted(sorted(l.leaf_id for l in g.leaves()) for g in groups)
            if got != exp["clusters"]:
                failures.append(f"{name}: clusters {got}")
        if "glyphs" in exp:
            got = sorted(sorted(l.leaf_id for l in g.leaves()) for g in groups)
            if got != exp["glyphs"]:
                failures.append(f"{name}: glyphs {got}")
        if "group_matrix" in exp:
            gm = build_distance_matrix([g.bbox for g in groups])
            if gm.labels(0, 1) != {exp["group_matrix"]}:
                failures.append(f"{name}: group matrix {gm.labels(0, 1)}")
        if "root" in exp:
            root, forest, _ = merge_groups_iterative(groups)
            cat = root.relationship.category if root.relationship else None
            kinds = [c.relationship.category if c.relationship else c.kind
                     for c in root.children]
            if (cat, kinds) != exp["root"]:
                failures.append(f"{name}: hierarchy ({cat}, {kinds})")
        if exp.get("position_encoded") and not (
                len(groups) == 1 and groups[0].position_encoded):
            failures.append(f"{name}: expected the position-encoded fallback")

    elapsed = time.perf_counter() - t0
    if elapsed >= 1.0:
        failures.append(f"runtime {elapsed:.2f}s")
    verdict("1. worked-segment matrices and final hierarchies",
            not failures, "; ".join(failures) or f"{elapsed * 1000:.0f} ms")


# ------------------------------------------------------------- criterion 2

def test_round_trip_accuracy():
    report = score_corpus(corpus_specs())
    bad = [r["chart"] for r in report["results"] if not r["ok"]]
    ok = report["accuracy"] >= 0.95 and report["seconds"] < 30.0
    verdict("2. corpus round-trip accuracy",
            ok, f"{report['matched']}/{report['total']} in {report['seconds']}s"
                + (f"; failed: {bad}" if bad else ""))


# ------------------------------------------------------------- criterion 3

def test_decoration_correction_closure():
    restored = []
    for spec in error_specs():
        chart = generate_synthetic_chart(spec)
        scene = filter_noise(normalize_scene(chart.svg))
        model = detect_decorations(scene)
        fixed = apply_corrections(
            model, scene, build_corrections(scene, chart.build.error_info))
        restored.append((spec.error, fixed.summary() == chart.truth))
    ok = all(r for _, r in restored)
    verdict("3. correction closure M1-M5", ok,
            ", ".join(f"{e}:{'ok' if r else 'FAIL'}" for e, r in restored))


# ------------------------------------------------------------- criterion 4

def test_encoding_rules():
    from chartloom.render.layouts import layout_pack
    checks = {}

    t = deconstruct(rect_scene([(0, 0, 10, 40), (14, 10, 24, 40), (28, 5, 38, 40)],
                               fills=["#111111", "#222222", "#333333"]))
    checks["fill"] = "fill" in {e.channel for e in t.encodings}

    boxes = layout_pack((0, 0, 240, 160), [6, 6, 4, 3, 2, 2, 1], gap=2.0)
    t = deconstruct(rect_scene(boxes))
    checks["area"] = {e.channel for e in t.encodings} == {"area"}

    t = deconstruct(rect_scene([(0, 20, 10, 60), (14, 0, 24, 60), (28, 32, 38, 60)]))
    checks["height"] = {e.channel for e in t.encodings} == {"height"}
    t = deconstruct(rect_scene([(0, 0, 30, 10), (30, 0, 42, 10), (42, 0, 90, 10)]))
    checks["width"] = {e.channel for e in t.encodings} == {"width"}

    # position needs a gravity-free one-directional grid
    t = deconstruct(rect_scene([(0, 20, 10, 40), (14, 10, 24, 30), (28, 25, 38, 45)]))
    checks["position"] = {e.channel for e in t.encodings} == {"y"}
    t = deconstruct(rect_scene([(0, 20, 10, 60), (14, 0, 24, 60), (28, 32, 38, 60)]))
    checks["no-gravity requirement"] = "y" not in {e.channel for e in t.encodings}

    ok = all(checks.values())
    verdict("4. channel inference rules", ok,
            ", ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in checks.items()))


# ------------------------------------------------------------- criterion 5

def test_schema_math():
    checks = {}
    chart = generate_synthetic_chart(ChartSpec("diverging_stacked", 1, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    checks["diverging cGroup=2"] = infer_schema(template).c_group == 2

    chart = generate_synthetic_chart(ChartSpec("treemap_grouped_bar", 1, "A"))
    template, _, _, _ = deconstruct_svg(chart.svg)
    schema = infer_schema(template)
    checks["nested bar cGroup=4"] = schema.c_group == 4

    max_rule = True
    self_compat = True
    for spec in corpus_specs(seeds=(1,)):
        if spec.variant != "A":
            continue
        chart = generate_synthetic_chart(spec)
        template, _, _, _ = deconstruct_svg(chart.svg)
        schema = infer_schema(template)
        max_rule &= schema.min_categorical == max(schema.c_group, schema.c_encode)
        sample = generate_sample_data(schema, template)
        self_compat &= check_compatibility(schema, sample).ok
    checks["minCategorical max rule"] = max_rule
    checks["sample self-compatible"] = self_compat

    ok = all(checks.values())
    verdict("5. schema arithmetic", ok,
            ", ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in checks.items()))


# ------------------------------------------------------------- criterion 6

def test_performance():
    results = []
    for rows, cols, limit, label in ((25, 40, 1.0, "1,000 rects"),
                                     (80, 100, 10.0, "8,000 rects")):
        build = build_heatmap(1, rows_n=rows, cols_n=cols)
        svg = emit_chart(build, "B")
        scene = filter_noise(normalize_scene(svg))
        decoration = detect_decorations(scene)
        content = strip_decorations(scene, decoration)
        t0 = time.perf_counter()
        template = deconstruct(content, decoration)
        elapsed = time.perf_counter() - t0
        results.append((label, elapsed, limit,
                        elapsed < limit and template.leaf_depth() == 2))
    ok = all(r[3] for r in results)
    verdict("6. deconstruction runtime", ok,
            ", ".join(f"{l}: {e:.2f}s (< {lim:g}s)" for l, e, lim, _ in results))


# ------------------------------------------------------------- criterion 7

SALES_ROWS = []
for cat, subs in (("Furniture", ("Bookcases", "Chairs")),
                  ("Office Supplies", ("Paper", "Binders")),
                  ("Technology", ("Phones", "Machines"))):
    for sub in subs:
        for region in ("North", "South", "East", "West"):
            for k in range(2):
                SALES_ROWS.append({
                    "Category": cat, "Subcategory": sub, "Region": region,
                    "Order ID": f"O{len(SALES_ROWS) + 1000}",
                    "Sales": 15 + (len(SALES_ROWS) * 7) % 70,
                })

REPLAY_CHOICES = [
    {"field": "Category"}, {"field": "Subcategory"}, {"field": "Region"},
    {"field": "Order ID"},
    {"channel": "height", "field": "Sales"},
    {"channel": "fill", "field": "Region"},
    {"channel": "area", "field": "Sales"},
]


def test_wizard_replay_end_to_end(tmp_path):
    import subprocess
    import sys

    from fastapi.testclient import TestClient
    from chartloom.service.api import create_app

    chart = generate_synthetic_chart(ChartSpec("treemap_grouped_bar", 1, "A"))
    csv_text = DataTable.from_rows(SALES_ROWS).to_csv()

    svg_path = tmp_path / "chart.svg"
    svg_path.write_text(chart.svg)
    csv_path = tmp_path / "sales.csv"
    csv_path.write_text(csv_text)
    choices_path = tmp_path / "choices.json"
    choices_path.write_text(json.dumps(REPLAY_CHOICES))
    out_path = tmp_path / "out.svg"

    def cli(*args):
        return subprocess.run([sys.executable, "-m", "chartloom.cli", *args],
                              capture_output=True, text=True)

    assert cli("deconstruct", str(svg_path), "-o", str(tmp_path / "t.json")).returncode == 0
    r = cli("apply", str(tmp_path / "t.json"), str(csv_path),
            "--choices", str(choices_path), "-o", str(out_path))
    assert r.returncode == 0, r.stderr
    cli_svg = out_path.read_text()

    client = TestClient(create_app())
    sid = client.post("/sessions", content=chart.svg).json()["id"]
    client.post(f"/sessions/{sid}/deconstruct")
    client.post(f"/sessions/{sid}/dataset", content=csv_text)
    for i, choice in enumerate(REPLAY_CHOICES):
        assert client.post(f"/sessions/{sid}/steps/{i}", json=choice).status_code == 200
    http_svg = client.get(f"/sessions/{sid}/export").json()["svg"]

    root = ET.fromstring(cli_svg)
    labels = lambda level: [el.get("data-label") for el in root.iter()
                            if el.get("data-level") == level]
    top_groups = [el for el in root.iter()
                  if el.get("data-label") in ("Furniture", "Office Supplies", "Technology")]
    sub_bars = [el for el in root.iter() if el.get("data-level") == "Region"]
    packs_per_bar = [len([c for c in bar if c.get("data-level") == "Order ID"])
                     for bar in sub_bars]
    marks = [el for el in root.iter() if el.get("data-role") == "mark"]

    checks = {
        "3 Category groups": len(top_groups) == 3,
        "4 Region packs per subcategory": packs_per_bar
        and all(p == 4 for p in packs_per_bar),
        "one rect per Order ID": len(marks) == len({r["Order ID"] for r in SALES_ROWS}),
        "CLI and HTTP byte-identical": cli_svg == http_svg,
    }
    ok = all(checks.values())
    verdict("7. scripted wizard replay", ok,
            ", ".join(f"{k}:{'ok' if v else 'FAIL'}" for k, v in checks.items()))


# ------------------------------------------------------------- criterion 8

def test_small_instance_brute_force():
    import test_brute_force as bf
    try:
        bf.test_greedy_matches_bruteforce_top_rank()
        ok, detail = True, f"{bf.CASES} randomized scenes, n <= 6"
    except AssertionError as exc:
        ok, detail = False, str(exc)
    verdict("8. brute-force partition oracle", ok, detail)
