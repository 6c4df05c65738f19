"""Synthetic corpus: spec records, generation, error seeding and scoring."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..config import DEFAULT_CONFIG, Config
from ..decorations import (
    Correction,
    detect_decorations,
    strip_decorations,
)
from ..grec.deconstruct import deconstruct
from ..ingest.scene import NormalizedScene, filter_noise, normalize_scene
from ..render.solver import BoundNode, COLLECTION, GLYPH, LEAF, solve
from . import builders as B
from .builders import (
    ARCHETYPES,
    BUILDERS,
    CONTENT_H,
    CONTENT_W,
    ChartBuild,
    DecorSpec,
    LegendSpec,
    PALETTE,
    _cat_labels,
    _expected,
    _leaf,
    _rng,
    _x_axis_from_slots,
    _y_axis_numeric,
    snap_nice_max,
)
from .emit import MARGIN_LEFT, MARGIN_TOP, emit_chart

VARIANTS = ("A", "B", "C")


@dataclass
class ChartSpec:
    archetype: str
    seed: int
    variant: str = "A"
    error: Optional[str] = None  # M1..M5

    @property
    def name(self) -> str:
        tag = f"-{self.error}" if self.error else ""
        return f"{self.archetype}-s{self.seed}-{self.variant}{tag}"

    def to_dict(self) -> dict:
        return {"archetype": self.archetype, "seed": self.seed,
                "variant": self.variant, "error": self.error}

    @classmethod
    def from_dict(cls, raw: dict) -> "ChartSpec":
        return cls(archetype=raw["archetype"], seed=raw["seed"],
                   variant=raw.get("variant", "A"), error=raw.get("error"))


@dataclass
class GeneratedChart:
    spec: ChartSpec
    svg: str
    build: ChartBuild
    truth: dict
    expected: dict


def build_treemap_grouped_bar(seed: int) -> ChartBuild:
    """Hybrid layout: yearly bars whose content is a two-level treemap."""
    rng = _rng(seed, "treemapbar")
    years = ["1978", "1985", "1993", "2001"]
    sides = _cat_labels("side", 2)
    n_cont = 6
    continents = _cat_labels("continent", n_cont)
    bar_w, gap_side, gap_year = 40.0, 8.0, 28.0
    rows = []
    year_nodes = []
    totals = []
    values: dict = {}
    countries = _cat_labels("country", 16)
    ci = 0
    for y in years:
        for s in sides:
            leaf_vals = []
            for cont in continents:
                per = int(rng.integers(2, 4))
                vals = [float(rng.integers(8, 40)) for _ in range(per)]
                for v in vals:
                    rows.append({"year": y, "side": s, "continent": cont,
                                 "country": countries[ci % len(countries)] + str(ci),
                                 "value": v})
                    ci += 1
                leaf_vals.append((cont, vals))
            values[(y, s)] = leaf_vals
            totals.append(sum(v for _, vs in leaf_vals for v in vs))
    totals = snap_nice_max(totals)
    dmax = max(totals)
    scale_back = {}
    ti = 0
    for y in years:
        for s in sides:
            raw_total = sum(v for _, vs in values[(y, s)] for v in vs)
            scale_back[(y, s)] = totals[ti] / raw_total
            ti += 1
    # rescale leaf values so each bar total matches its snapped value exactly
    for r in rows:
        r["value"] = round(r["value"] * scale_back[(r["year"], r["side"])], 4)
    by_bar: dict = {}
    for r in rows:
        by_bar.setdefault((r["year"], r["side"]), []).append(r)
    ti = 0
    for y in years:
        for s in sides:
            bar_rows = by_bar[(y, s)]
            drift = totals[ti] - sum(r["value"] for r in bar_rows)
            bar_rows[-1]["value"] = round(bar_rows[-1]["value"] + drift, 6)
            ti += 1
    by_pack: dict = {}
    for r in rows:
        by_pack.setdefault((r["year"], r["side"], r["continent"]), []).append(r["value"])
    ti = 0
    for y in years:
        side_nodes = []
        for s in sides:
            packs = []
            for cont, _vals in values[(y, s)]:
                # geometry comes from the very values the data table carries
                vals = by_pack[(y, s, cont)]
                kids = [_leaf(PALETTE[continents.index(cont) % len(PALETTE)],
                              area=v) for v in vals]
                packs.append(BoundNode(kind=COLLECTION, category="Packing", gap=1.0,
                                       children=kids, label=cont,
                                       area=sum(k.area for k in kids),
                                       level_name="country"))
            side_nodes.append(BoundNode(
                kind=COLLECTION, category="Packing", gap=3.0, children=packs,
                label=s, width=bar_w, height=totals[ti] / dmax * CONTENT_H,
                level_name="continent"))  # totals[ti] == sum of the pack areas
            ti += 1
        year_nodes.append(BoundNode(kind=COLLECTION, category="HGrid", gap=gap_side,
                                    gravity="Bottom", children=side_nodes, label=y,
                                    height=CONTENT_H, level_name="side"))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap_year, gravity="Bottom",
                     children=year_nodes, height=CONTENT_H, level_name="year")
    solve(root)
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(years, [(g.box[0], g.box[2]) for g in year_nodes],
                                  field_type="Date"),
        y_axis=_y_axis_numeric((0.0, dmax)),
        legend=LegendSpec("Discrete",
                          entries=[(c, PALETTE[i % len(PALETTE)])
                                   for i, c in enumerate(continents)]),
        title="trade treemap bars",
    )
    return ChartBuild(
        archetype="treemap_grouped_bar", seed=seed, root=root,
        columns=[("year", "Date"), ("side", "Categorical"),
                 ("continent", "Categorical"), ("country", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["year", "side", "continent", "country"],
        encoding_choices=[{"channel": "height", "field": "value"},
                          {"channel": "fill", "field": "continent"},
                          {"channel": "area", "field": "value"}],
        decor=decor,
        expected=_expected(
            depth=4,
            levels=[[("HGrid", "Bottom", "Collection")],
                    [("HGrid", "Bottom", "Collection")],
                    [("Packing", None, "Collection")],
                    [("Packing", None, "Collection")]],
            encodings=[("height", "level", 2), ("fill", "mark", 4),
                       ("area", "mark", 4)],
        ),
    )


ALL_BUILDERS = dict(BUILDERS)
ALL_BUILDERS["treemap_grouped_bar"] = build_treemap_grouped_bar


def _seed_error(build: ChartBuild, cls: str) -> ChartBuild:
    decor = build.decor
    if cls == "M1":
        label = decor.x_axis.tiers[0].pop()
        decor.extra_texts.append((label[0], label[1], CONTENT_H + 20.0))
        build.error_info = {"class": "M1", "target": "XAxis",
                            "texts": [label[0]], "tier": 0}
    elif cls == "M2":
        stray = ("n=500", max(a for _, a in decor.x_axis.tiers[0]) + 44.0,
                 CONTENT_H + 12.0)
        decor.extra_texts.append(stray)
        build.error_info = {"class": "M2", "target": "XAxis", "texts": ["n=500"]}
    elif cls == "M4":
        decor.y_axis.tier_rows = [24.0]
        decor.y_axis.ticks = False
        decor.y_axis.axis_line = None
        build.error_info = {"class": "M4", "target": "YAxis",
                            "region": [-6.0, -16.0, 34.0, CONTENT_H + 8.0]}
    elif cls == "M5":
        decor.fake_legend = LegendSpec("Discrete", entries=[
            ("note a", "#cccccc"), ("note b", "#aaaaaa"), ("note c", "#888888")])
        build.error_info = {"class": "M5", "target": "Legend"}
    else:
        raise ValueError(f"unknown error class {cls}")
    return build


def build_chart(spec: ChartSpec) -> ChartBuild:
    if spec.error == "M3":
        build = B.build_grouped_stacked(spec.seed, uneven=True)
    elif spec.error:
        build = ALL_BUILDERS[spec.archetype](spec.seed)
        build = _seed_error(build, spec.error)
    else:
        build = ALL_BUILDERS[spec.archetype](spec.seed)
    return build


def truth_from_build(build: ChartBuild) -> dict:
    def axis_truth(ax, extra_tier_texts=None):
        if ax is None:
            return None
        tiers = [sorted(t for t, _ in tier) for tier in ax.tiers]
        if extra_tier_texts:
            tier_i, texts = extra_tier_texts
            tiers[tier_i] = sorted(tiers[tier_i] + texts)
        return {"tiers": tiers, "fieldTypes": list(ax.field_types)}

    extra = None
    if build.error_info and build.error_info["class"] == "M1":
        extra = (build.error_info["tier"], build.error_info["texts"])
    return {
        "xAxis": axis_truth(build.decor.x_axis,
                            extra if build.error_info
                            and build.error_info.get("target") == "XAxis"
                            and build.error_info["class"] == "M1" else None),
        "yAxis": axis_truth(build.decor.y_axis),
        "legend": {
            "kind": build.decor.legend.kind,
            "entries": sorted([list(e) for e in build.decor.legend.entries]),
        },
    }


def generate_synthetic_chart(spec: ChartSpec) -> GeneratedChart:
    build = build_chart(spec)
    svg = emit_chart(build, spec.variant)
    return GeneratedChart(spec=spec, svg=svg, build=build,
                          truth=truth_from_build(build), expected=build.expected)


def build_corrections(scene: NormalizedScene, error_info: dict) -> list[Correction]:
    """Documented correction sequence that repairs each seeded error class."""
    cls = error_info["class"]
    target = error_info["target"]

    def ids_of(texts: list[str]) -> list[int]:
        wanted = set(texts)
        return [t.id for t in scene.texts() if t.content in wanted]

    if cls == "M1":
        return [Correction("AddLabel", target,
                           {"elementIds": ids_of(error_info["texts"]),
                            "tier": error_info.get("tier", 0)})]
    if cls == "M2":
        return [Correction("RemoveLabel", target,
                           {"elementIds": ids_of(error_info["texts"])})]
    if cls == "M3":
        return [Correction("AddTier", target, {}),
                Correction("AddLabel", target,
                           {"elementIds": ids_of(error_info["texts"]), "tier": 1})]
    if cls == "M4":
        r = error_info["region"]
        region = [r[0] + MARGIN_LEFT, r[1] + MARGIN_TOP,
                  r[2] + MARGIN_LEFT, r[3] + MARGIN_TOP]
        return [Correction("DesignateRegion", target, {"region": region})]
    if cls == "M5":
        return [Correction("RemoveDecoration", target, {})]
    raise ValueError(f"unknown error class {cls}")


def corpus_specs(seeds: tuple[int, ...] = (1, 2)) -> list[ChartSpec]:
    return [ChartSpec(a, s, v)
            for a in ARCHETYPES for v in VARIANTS for s in seeds]


def error_specs(seed: int = 7) -> list[ChartSpec]:
    return [
        ChartSpec("bar", seed, "A", error="M1"),
        ChartSpec("bar", seed, "A", error="M2"),
        ChartSpec("grouped_stacked", seed, "A", error="M3"),
        ChartSpec("bar", seed, "A", error="M4"),
        ChartSpec("bar", seed, "A", error="M5"),
    ]


def write_manifest(path: str, specs: list[ChartSpec]) -> None:
    doc = {"charts": [s.to_dict() for s in specs]}
    with open(path, "w") as fh:
        json.dump(doc, fh, indent=2)


def read_manifest(path: str) -> list[ChartSpec]:
    with open(path) as fh:
        doc = json.load(fh)
    return [ChartSpec.from_dict(r) for r in doc["charts"]]


def deconstruct_svg(svg: str, config: Config = DEFAULT_CONFIG):
    """Full pipeline on raw SVG text: ingest, detect, strip, deconstruct."""
    scene = filter_noise(normalize_scene(svg, config), config)
    decoration = detect_decorations(scene, config)
    content = strip_decorations(scene, decoration, config)
    template = deconstruct(content, decoration, config)
    return template, decoration, scene, content


def score_corpus(specs: list[ChartSpec], config: Config = DEFAULT_CONFIG) -> dict:
    results = []
    t_all = time.perf_counter()
    for spec in specs:
        chart = generate_synthetic_chart(spec)
        t0 = time.perf_counter()
        try:
            template, decoration, _, _ = deconstruct_svg(chart.svg, config)
            got = template.structure_summary()
            ok = got == chart.expected
            detail = None if ok else {"expected": chart.expected, "got": got}
        except Exception as exc:  # scoring must not abort on one chart
            ok, detail = False, {"error": repr(exc)}
        results.append({
            "chart": spec.name, "ok": ok,
            "seconds": round(time.perf_counter() - t0, 4),
            **({"detail": detail} if detail else {}),
        })
    n_ok = sum(r["ok"] for r in results)
    return {
        "total": len(results),
        "matched": n_ok,
        "accuracy": round(n_ok / len(results), 4) if results else 0.0,
        "seconds": round(time.perf_counter() - t_all, 3),
        "results": results,
    }
