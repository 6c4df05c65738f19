"""Archetype builders for the synthetic chart corpus.

Each builder produces a solved geometry tree, the tabular data behind it, the
decoration layer, the canonical reuse choices and the ground-truth template
structure the deconstruction must recover. Quantitative extremes are snapped
onto nice scale endpoints so a re-render of the deconstructed template on the
same data reproduces the original geometry exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..render.scales import nice_ceil, nice_floor, nice_step
from ..render.solver import BoundNode, COLLECTION, GLYPH, LEAF, solve

CONTENT_W = 420.0
CONTENT_H = 240.0

PALETTE = ["#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#76b7b2", "#edc948", "#b07aa1"]
GRAY = "#9aa0a6"
GRADIENT = [(0.0, "#2c7bb6"), (1.0, "#d7191c")]

ARCHETYPES = [
    "bar", "grouped_bar", "stacked_bar", "diverging_stacked", "grouped_stacked",
    "heatmap", "bullet", "treemap", "marimekko", "range", "waterfall",
    "small_multiples",
]

ERROR_CLASSES = ["M1", "M2", "M3", "M4", "M5"]


@dataclass
class AxisSpec:
    tiers: list[list[tuple[str, float]]]          # per tier: (text, anchor px)
    tier_rows: list[float]                        # cross coordinate per tier
    field_types: list[str]
    axis_line: Optional[tuple[float, float]] = None  # span along the axis
    ticks: bool = True


@dataclass
class LegendSpec:
    kind: str                                     # Discrete | Continuous | None
    entries: list[tuple[str, str]] = field(default_factory=list)
    stops: list[tuple[float, str]] = field(default_factory=list)
    tick_labels: list[str] = field(default_factory=list)


@dataclass
class DecorSpec:
    x_axis: Optional[AxisSpec] = None
    y_axis: Optional[AxisSpec] = None
    legend: LegendSpec = field(default_factory=lambda: LegendSpec("None"))
    gridline_ys: list[float] = field(default_factory=list)
    title: str = "chart"
    extra_texts: list[tuple[str, float, float]] = field(default_factory=list)  # seeded noise
    fake_legend: Optional[LegendSpec] = None  # M5 seeding: drawn but not ground truth


@dataclass
class ChartBuild:
    archetype: str
    seed: int
    root: BoundNode
    columns: list[tuple[str, str]]                # (name, fieldType)
    rows: list[dict]
    level_fields: list[str]                       # outermost group field ... mark field
    encoding_choices: list[dict]                  # {channel, field} in plan order
    decor: DecorSpec = field(default_factory=DecorSpec)
    expected: dict = field(default_factory=dict)
    truth: dict = field(default_factory=dict)     # decoration summary ground truth
    error_info: Optional[dict] = None
    anchor_fill: Optional[str] = None             # cross-group anchor color


def _rng(seed: int, tag: str) -> np.random.Generator:
    # zlib.crc32 is stable across processes, unlike the salted builtin hash
    import zlib
    return np.random.default_rng((seed * 2654435761 + zlib.crc32(tag.encode())) % (2**32))


def snap_nice_max(values: list[float]) -> list[float]:
    """Raise the maximum to its own nice ceiling (fixed point of nice_ceil)."""
    vals = [float(v) for v in values]
    top = nice_ceil(max(vals))
    assert abs(nice_ceil(top) - top) < 1e-9
    vals[int(np.argmax(vals))] = top
    return vals


def snap_nice_span(values: list[float]) -> list[float]:
    """Pin min/max onto the nice domain endpoints a position scale would pick."""
    vals = [float(v) for v in values]
    for _ in range(4):
        lo, hi = min(vals), max(vals)
        span = hi - lo
        nlo, nhi = nice_floor(lo, span), nice_ceil(hi)
        if abs(nlo - lo) < 1e-9 and abs(nhi - hi) < 1e-9:
            return vals
        vals[int(np.argmin(vals))] = nlo
        vals[int(np.argmax(vals))] = nhi
    raise AssertionError("nice span did not converge")


def _lerp_color(stops: list[tuple[float, str]], t: float) -> str:
    t = min(max(t, 0.0), 1.0)
    (o0, c0), (o1, c1) = stops[0], stops[-1]
    f = 0.0 if o1 == o0 else (t - o0) / (o1 - o0)
    rgb0 = [int(c0[i:i + 2], 16) for i in (1, 3, 5)]
    rgb1 = [int(c1[i:i + 2], 16) for i in (1, 3, 5)]
    mixed = [round(a + (b - a) * f) for a, b in zip(rgb0, rgb1)]
    return "#%02x%02x%02x" % tuple(mixed)


def fill_for_value(v: float, domain: tuple[float, float],
                   stops: list[tuple[float, str]] = None) -> str:
    stops = stops or GRADIENT
    lo, hi = domain
    t = 0.5 if hi == lo else (v - lo) / (hi - lo)
    return _lerp_color(stops, t)


def _expected(depth: int, levels: list, encodings: list, constraints: list = (),
              forest: bool = False, pe_roots: Optional[list] = None) -> dict:
    return {
        "depth": depth,
        "forest": forest,
        "levels": [sorted(set(l)) for l in levels],
        "positionEncodedRoots": pe_roots if pe_roots is not None else [False],
        "encodings": sorted(encodings),
        "constraints": sorted([(k, tuple(a)) for k, a in constraints]),
    }


def _cat_labels(prefix: str, n: int) -> list[str]:
    names = {
        "region": ["North", "South", "East", "West", "Central", "Coast"],
        "series": ["Basic", "Plus", "Premium", "Ultra"],
        "group": ["Q1", "Q2", "Q3", "Q4", "Q5"],
        "label": ["Alpha", "Beta", "Gamma", "Delta", "Echo", "Foxtrot", "Golf"],
        "response": ["Strongly disagree", "Disagree", "Neutral", "Agree", "Strongly agree"],
        "row": ["Row A", "Row B", "Row C", "Row D", "Row E"],
        "col": ["East", "West", "North", "South", "Mid", "Far", "Near", "Out"],
        "item": ["Revenue", "Orders", "Traffic", "Signups", "Retention"],
        "panel": ["Lisbon", "Porto", "Braga", "Faro"],
        "continent": ["Asia", "Europe", "Africa", "Americas", "Oceania", "Antarctica"],
        "country": ["ARG", "BRA", "CHN", "DEU", "EGY", "FRA", "IND", "JPN", "KEN",
                    "MEX", "NGA", "POL", "RUS", "USA", "VNM", "ZAF"],
        "step": ["Start", "Sales", "Refunds", "Fees", "Tax", "Credits", "End"],
        "side": ["Imports", "Exports"],
        "day": ["Mon", "Tue", "Wed", "Thu", "Fri", "Sat", "Sun"],
    }
    pool = names.get(prefix, [f"{prefix.title()} {i + 1}" for i in range(n)])
    if len(pool) < n:
        pool = pool + [f"{prefix.title()} {i + 1}" for i in range(n - len(pool))]
    return pool[:n]


def _x_axis_from_slots(labels: list[str], slots: list[tuple[float, float]],
                       field_type: str = "Categorical") -> AxisSpec:
    anchors = [(l, (s0 + s1) / 2) for l, (s0, s1) in zip(labels, slots)]
    return AxisSpec(tiers=[anchors], tier_rows=[CONTENT_H + 12.0],
                    field_types=[field_type],
                    axis_line=(min(s[0] for s in slots), max(s[1] for s in slots)))


def _y_axis_numeric(domain: tuple[float, float]) -> AxisSpec:
    lo, hi = domain
    step = nice_step((hi - lo) / 5)
    ticks, v = [], lo
    while v <= hi + 1e-9:
        ticks.append(round(v, 6))
        v += step
    anchors = [(f"{t:g}", CONTENT_H - (t - lo) / (hi - lo) * CONTENT_H) for t in ticks]
    return AxisSpec(tiers=[anchors], tier_rows=[-10.0], field_types=["Quantitative"],
                    axis_line=(min(a for _, a in anchors), max(a for _, a in anchors)))


def _y_axis_categories(labels: list[str], anchors_px: list[float]) -> AxisSpec:
    return AxisSpec(tiers=[list(zip(labels, anchors_px))], tier_rows=[-10.0],
                    field_types=["Categorical"],
                    axis_line=(min(anchors_px), max(anchors_px)))


def _leaf(fill: str, **kw) -> BoundNode:
    return BoundNode(kind=LEAF, fill=fill, **kw)


# ---------------------------------------------------------------- archetypes

def build_bar(seed: int) -> ChartBuild:
    rng = _rng(seed, "bar")
    n = int(rng.integers(5, 8))
    labels = _cat_labels("label", n)
    values = snap_nice_max(list(rng.integers(40, 200, size=n).astype(float)))
    dmax = max(values)
    bar_w, gap = 34.0, 12.0
    kids = [_leaf(PALETTE[0], label=l, width=bar_w, height=v / dmax * CONTENT_H)
            for l, v in zip(labels, values)]
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap, gravity="Bottom",
                     children=kids, height=CONTENT_H, level_name="label")
    solve(root)
    slots = [(k.box[0], k.box[2]) for k in kids]
    y_axis = _y_axis_numeric((0.0, dmax))
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(labels, slots),
        y_axis=y_axis,
        gridline_ys=[a for _, a in y_axis.tiers[0]],
        title="totals by label",
    )
    rows = [{"label": l, "value": v} for l, v in zip(labels, values)]
    return ChartBuild(
        archetype="bar", seed=seed, root=root,
        columns=[("label", "Categorical"), ("value", "Quantitative")],
        rows=rows, level_fields=["label"],
        encoding_choices=[{"channel": "height", "field": "value"}],
        decor=decor,
        expected=_expected(
            depth=1,
            levels=[[("HGrid", "Bottom", "Collection")]],
            encodings=[("height", "mark", 1)],
        ),
    )


def build_grouped_bar(seed: int) -> ChartBuild:
    rng = _rng(seed, "grouped")
    m, k = int(rng.integers(3, 5)), 3
    groups = _cat_labels("group", m)
    series = _cat_labels("series", k)
    values = snap_nice_max(list(rng.integers(40, 200, size=m * k).astype(float)))
    dmax = max(values)
    bar_w, gap_in, gap_out = 20.0, 6.0, 24.0
    gkids = []
    rows = []
    for gi, g in enumerate(groups):
        kids = []
        for si, s in enumerate(series):
            v = values[gi * k + si]
            rows.append({"group": g, "series": s, "value": v})
            kids.append(_leaf(PALETTE[si], label=s, width=bar_w, height=v / dmax * CONTENT_H))
        gkids.append(BoundNode(kind=COLLECTION, category="HGrid", gap=gap_in,
                               gravity="Bottom", children=kids, label=g,
                               height=CONTENT_H, level_name="series"))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap_out, gravity="Bottom",
                     children=gkids, height=CONTENT_H, level_name="group")
    solve(root)
    slots = [(g.box[0], g.box[2]) for g in gkids]
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(groups, slots),
        y_axis=_y_axis_numeric((0.0, dmax)),
        legend=LegendSpec("Discrete", entries=[(s, PALETTE[i]) for i, s in enumerate(series)]),
        title="grouped totals",
    )
    return ChartBuild(
        archetype="grouped_bar", seed=seed, root=root,
        columns=[("group", "Categorical"), ("series", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["group", "series"],
        encoding_choices=[{"channel": "height", "field": "value"},
                          {"channel": "fill", "field": "series"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("HGrid", "Bottom", "Collection")], [("HGrid", "Bottom", "Collection")]],
            encodings=[("height", "mark", 2), ("fill", "mark", 2)],
        ),
    )


def build_stacked_bar(seed: int) -> ChartBuild:
    rng = _rng(seed, "stacked")
    m, k = int(rng.integers(4, 6)), 3
    bars = _cat_labels("label", m)
    series = _cat_labels("series", k)
    raw = rng.integers(20, 90, size=(m, k)).astype(float)
    totals = snap_nice_max(list(raw.sum(axis=1)))
    for i in range(m):  # rescale each bar so its total hits the snapped value
        raw[i] *= totals[i] / raw[i].sum()
    dmax = max(totals)
    bar_w, gap = 30.0, 18.0
    bkids = []
    rows = []
    for bi, b in enumerate(bars):
        kids = []
        for si, s in enumerate(series):
            v = float(raw[bi, si])
            rows.append({"label": b, "series": s, "value": round(v, 4)})
            kids.append(_leaf(PALETTE[si], label=s, height=v / dmax * CONTENT_H, width=bar_w))
        bkids.append(BoundNode(kind=COLLECTION, category="VStack", children=kids,
                               label=b, width=bar_w, level_name="series"))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap, gravity="Bottom",
                     children=bkids, height=CONTENT_H, level_name="label")
    solve(root)
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(bars, [(b.box[0], b.box[2]) for b in bkids]),
        y_axis=_y_axis_numeric((0.0, dmax)),
        legend=LegendSpec("Discrete", entries=[(s, PALETTE[i]) for i, s in enumerate(series)]),
        title="stacked totals",
    )
    return ChartBuild(
        archetype="stacked_bar", seed=seed, root=root,
        columns=[("label", "Categorical"), ("series", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["label", "series"],
        encoding_choices=[{"channel": "height", "field": "value"},
                          {"channel": "fill", "field": "series"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("HGrid", "Bottom", "Collection")], [("VStack", None, "Collection")]],
            encodings=[("height", "mark", 2), ("fill", "mark", 2)],
        ),
    )


def build_diverging_stacked(seed: int) -> ChartBuild:
    rng = _rng(seed, "diverging")
    m, k = 4, 5
    rows_cat = _cat_labels("row", m)
    responses = _cat_labels("response", k)
    anchor_fill = GRAY
    colors = ["#c23b22", "#e89f71", GRAY, "#84b6f4", "#3c6fb0"]
    shares = rng.uniform(8, 40, size=(m, k))
    total_w = CONTENT_W * 0.8
    row_h, gap = 26.0, 16.0
    rkids = []
    rows = []
    for ri, rc in enumerate(rows_cat):
        widths = shares[ri] / shares[ri].sum() * total_w * rng.uniform(0.75, 1.0)
        kids = []
        for ci, resp in enumerate(responses):
            rows.append({"row": rc, "response": resp, "value": round(float(widths[ci]), 4)})
            kids.append(_leaf(colors[ci], label=resp, width=float(widths[ci]), height=row_h))
        rkids.append(BoundNode(kind=COLLECTION, category="HStack", children=kids,
                               label=rc, height=row_h, level_name="response"))
    root = BoundNode(kind=COLLECTION, category="VGrid", gap=gap, children=rkids,
                     level_name="row",
                     anchor_selector=lambda lf: lf.fill == anchor_fill)
    solve(root)
    anchors_px = [(r.box[1] + r.box[3]) / 2 for r in rkids]
    decor = DecorSpec(
        y_axis=_y_axis_categories(rows_cat, anchors_px),
        legend=LegendSpec("Discrete", entries=list(zip(responses, colors))),
        title="responses by row",
    )
    return ChartBuild(
        archetype="diverging_stacked", seed=seed, root=root,
        columns=[("row", "Categorical"), ("response", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["row", "response"],
        encoding_choices=[{"channel": "width", "field": "value"},
                          {"channel": "fill", "field": "response"}],
        decor=decor, anchor_fill=anchor_fill,
        expected=_expected(
            depth=2,
            levels=[[("VGrid", None, "Collection")], [("HStack", None, "Collection")]],
            encodings=[("width", "mark", 2), ("fill", "mark", 2)],
            constraints=[("CrossGroupAlign", ["centerX"])],
        ),
    )


def build_grouped_stacked(seed: int, uneven: bool = False) -> ChartBuild:
    rng = _rng(seed, "groupstack")
    m = 3 if not uneven else 2
    per_group = [2] * m if not uneven else [3, 2]
    k = 3
    groups = _cat_labels("group", m)
    series = _cat_labels("series", k)
    bar_names = _cat_labels("label", max(per_group) * m)
    bar_w, gap_in, gap_out = 22.0, 8.0, 30.0
    gkids = []
    rows = []
    all_totals = []
    raws = []
    for gi in range(m):
        raw = rng.integers(15, 70, size=(per_group[gi], k)).astype(float)
        raws.append(raw)
        all_totals.extend(raw.sum(axis=1))
    snapped = snap_nice_max(all_totals)
    idx = 0
    for gi in range(m):
        raw = raws[gi]
        for bi in range(per_group[gi]):
            raw[bi] *= snapped[idx] / raw[bi].sum()
            idx += 1
    dmax = max(snapped)
    bar_labels_flat = []
    idx = 0
    for gi, g in enumerate(groups):
        bars = []
        for bi in range(per_group[gi]):
            bname = bar_names[idx]
            bar_labels_flat.append(bname)
            idx += 1
            kids = []
            for si, s in enumerate(series):
                v = float(raws[gi][bi, si])
                rows.append({"group": g, "bar": bname, "series": s, "value": round(v, 4)})
                kids.append(_leaf(PALETTE[si], label=s, height=v / dmax * CONTENT_H, width=bar_w))
            bars.append(BoundNode(kind=COLLECTION, category="VStack", children=kids,
                                  label=bname, width=bar_w, level_name="series"))
        gkids.append(BoundNode(kind=COLLECTION, category="HGrid", gap=gap_in,
                               gravity="Bottom", children=bars, label=g,
                               height=CONTENT_H, level_name="bar"))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap_out, gravity="Bottom",
                     children=gkids, height=CONTENT_H, level_name="group")
    solve(root)
    bar_nodes = [b for g in gkids for b in g.children]
    x_axis = AxisSpec(
        tiers=[
            [(b.label, (b.box[0] + b.box[2]) / 2) for b in bar_nodes],
            [(g, (gk.box[0] + gk.box[2]) / 2) for g, gk in zip(groups, gkids)],
        ],
        tier_rows=[CONTENT_H + 12.0, CONTENT_H + 28.0],
        field_types=["Categorical", "Categorical"],
        axis_line=(min(b.box[0] for b in bar_nodes), max(b.box[2] for b in bar_nodes)),
    )
    decor = DecorSpec(
        x_axis=x_axis,
        y_axis=_y_axis_numeric((0.0, dmax)),
        legend=LegendSpec("Discrete", entries=[(s, PALETTE[i]) for i, s in enumerate(series)]),
        title="grouped stacked",
    )
    truth_tiers = [sorted(b.label for b in bar_nodes)]
    truth_types = ["Categorical"]
    if not uneven:  # the even corpus chart detects both tiers automatically
        truth_tiers.append(sorted(groups))
        truth_types.append("Categorical")
    return ChartBuild(
        archetype="grouped_stacked", seed=seed, root=root,
        columns=[("group", "Categorical"), ("bar", "Categorical"),
                 ("series", "Categorical"), ("value", "Quantitative")],
        rows=rows, level_fields=["group", "bar", "series"],
        encoding_choices=[{"channel": "height", "field": "value"},
                          {"channel": "fill", "field": "series"}],
        decor=decor,
        expected=_expected(
            depth=3,
            levels=[[("HGrid", "Bottom", "Collection")],
                    [("HGrid", "Bottom", "Collection")],
                    [("VStack", None, "Collection")]],
            encodings=[("height", "mark", 3), ("fill", "mark", 3)],
        ),
        error_info={"class": "M3", "target": "XAxis",
                    "texts": groups, "tier": 1} if uneven else None,
    )


def build_heatmap(seed: int, rows_n: int = 5, cols_n: int = 7) -> ChartBuild:
    rng = _rng(seed, "heatmap")
    row_names = _cat_labels("row", rows_n)
    col_names = _cat_labels("col", cols_n)
    values = rng.integers(0, 101, size=(rows_n, cols_n)).astype(float)
    values.flat[int(np.argmax(values))] = 100.0
    values.flat[int(np.argmin(values))] = 0.0
    cell, gap = 24.0, 2.0
    rkids = []
    rows = []
    for ri, rn in enumerate(row_names):
        kids = []
        for ci, cn in enumerate(col_names):
            v = float(values[ri, ci])
            rows.append({"row": rn, "col": cn, "value": v})
            kids.append(_leaf(fill_for_value(v, (0, 100)), label=cn,
                              width=cell, height=cell))
        rkids.append(BoundNode(kind=COLLECTION, category="HGrid", gap=gap,
                               children=kids, label=rn, height=cell, level_name="col"))
    root = BoundNode(kind=COLLECTION, category="VGrid", gap=gap, children=rkids,
                     level_name="row")
    solve(root)
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(col_names,
                                  [(k.box[0], k.box[2]) for k in rkids[0].children]),
        y_axis=_y_axis_categories(row_names,
                                  [(r.box[1] + r.box[3]) / 2 for r in rkids]),
        legend=LegendSpec("Continuous", stops=GRADIENT, tick_labels=["0", "50", "100"]),
        title="activity heatmap",
    )
    return ChartBuild(
        archetype="heatmap", seed=seed, root=root,
        columns=[("row", "Categorical"), ("col", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["row", "col"],
        encoding_choices=[{"channel": "fill", "field": "value"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("VGrid", None, "Collection")], [("HGrid", None, "Collection")]],
            encodings=[("fill", "mark", 2)],
        ),
    )


def build_bullet(seed: int) -> ChartBuild:
    rng = _rng(seed, "bullet")
    n = 4
    items = _cat_labels("item", n)
    # one shared horizontal scale: snapping the top measure makes the nice
    # ceiling coincide with the background width, so values equal pixels
    measures = snap_nice_max(list(rng.uniform(90, 230, size=n)))
    base_w = max(measures)
    inners = [round(m * float(rng.uniform(0.3, 0.8)), 4) for m in measures]
    glyph_h, gap = 24.0, 18.0
    gkids = []
    rows = []
    for i, item in enumerate(items):
        members = [
            _leaf("#d9d9d9", width=base_w, height=glyph_h),
            _leaf("#4e79a7", width=float(measures[i]), height=12.0),
            _leaf("#1b3a5c", width=float(inners[i]), height=6.0),
        ]
        rows.append({"item": item, "measure": round(float(measures[i]), 4),
                     "inner": round(float(inners[i]), 4)})
        gkids.append(BoundNode(kind=GLYPH, children=members, label=item,
                               align_axes=["left", "centerY"], level_name="item"))
    root = BoundNode(kind=COLLECTION, category="VGrid", gap=gap, children=gkids,
                     level_name="item")
    solve(root)
    decor = DecorSpec(
        y_axis=_y_axis_categories(items, [(g.box[1] + g.box[3]) / 2 for g in gkids]),
        title="progress bullets",
    )
    return ChartBuild(
        archetype="bullet", seed=seed, root=root,
        columns=[("item", "Categorical"), ("measure", "Quantitative"),
                 ("inner", "Quantitative")],
        rows=rows, level_fields=["item"],
        encoding_choices=[{"channel": "width", "member": "#4e79a7", "field": "measure"},
                          {"channel": "width", "member": "#1b3a5c", "field": "inner"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("VGrid", None, "Collection")], [("None", None, "Glyph")]],
            encodings=[("width", "glyphMember", 2), ("width", "glyphMember", 2)],
            constraints=[("GlyphAlign", ["left", "centerY"])],
        ),
    )


def build_treemap(seed: int) -> ChartBuild:
    rng = _rng(seed, "treemap")
    n_groups = 3
    continents = _cat_labels("continent", n_groups)
    counts = [int(c) for c in rng.integers(3, 6, size=n_groups)]
    countries = _cat_labels("country", sum(counts))
    rows = []
    gkids = []
    ci = 0
    for gi, cont in enumerate(continents):
        kids = []
        for _ in range(counts[gi]):
            v = float(rng.integers(10, 80))
            rows.append({"continent": cont, "country": countries[ci], "value": v})
            kids.append(_leaf(PALETTE[gi], label=countries[ci], area=v))
            ci += 1
        gkids.append(BoundNode(kind=COLLECTION, category="Packing", gap=2.0,
                               children=kids, label=cont,
                               area=sum(k.area for k in kids), level_name="country"))
    root = BoundNode(kind=COLLECTION, category="Packing", gap=4.0, children=gkids,
                     width=CONTENT_W * 0.7, height=CONTENT_H, level_name="continent")
    solve(root)
    decor = DecorSpec(
        legend=LegendSpec("Discrete", entries=[(c, PALETTE[i]) for i, c in enumerate(continents)]),
        title="value treemap",
    )
    return ChartBuild(
        archetype="treemap", seed=seed, root=root,
        columns=[("continent", "Categorical"), ("country", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["continent", "country"],
        encoding_choices=[{"channel": "fill", "field": "continent"},
                          {"channel": "area", "field": "value"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("Packing", None, "Collection")], [("Packing", None, "Collection")]],
            encodings=[("fill", "mark", 2), ("area", "mark", 2)],
        ),
    )


def build_marimekko(seed: int) -> ChartBuild:
    rng = _rng(seed, "marimekko")
    m, k = 4, 3
    row_names = _cat_labels("row", m)
    col_names = _cat_labels("col", k)
    values = rng.uniform(10, 60, size=(m, k))
    rows = []
    rkids = []
    row_totals = values.sum(axis=1)
    for ri, rn in enumerate(row_names):
        kids = []
        for ci, cn in enumerate(col_names):
            v = float(values[ri, ci])
            rows.append({"row": rn, "col": cn, "value": round(v, 4)})
            kids.append(_leaf(PALETTE[ci], label=cn, width=v))
        rkids.append(BoundNode(kind=COLLECTION, category="HStack", children=kids,
                               label=rn, height=float(row_totals[ri]), level_name="col"))
    root = BoundNode(kind=COLLECTION, category="VStack", children=rkids,
                     width=CONTENT_W * 0.75, height=CONTENT_H, level_name="row")
    solve(root)
    decor = DecorSpec(
        y_axis=_y_axis_categories(row_names, [(r.box[1] + r.box[3]) / 2 for r in rkids]),
        legend=LegendSpec("Discrete", entries=[(c, PALETTE[i]) for i, c in enumerate(col_names)]),
        title="share mosaic",
    )
    return ChartBuild(
        archetype="marimekko", seed=seed, root=root,
        columns=[("row", "Categorical"), ("col", "Categorical"),
                 ("value", "Quantitative")],
        rows=rows, level_fields=["row", "col"],
        encoding_choices=[{"channel": "height", "field": "value"},
                          {"channel": "width", "field": "value"},
                          {"channel": "fill", "field": "col"}],
        decor=decor,
        expected=_expected(
            depth=2,
            levels=[[("VStack", None, "Collection")], [("HStack", None, "Collection")]],
            encodings=[("height", "level", 1), ("width", "mark", 2), ("fill", "mark", 2)],
        ),
    )


def build_range(seed: int) -> ChartBuild:
    rng = _rng(seed, "range")
    n = 6
    days = _cat_labels("day", n)
    lows = [20.0 + float(rng.uniform(0, 30))]
    highs = [lows[0] + 25.0 + float(rng.uniform(5, 25))]
    for _ in range(n - 1):  # consecutive ranges overlap so grid pairs exist
        lo = float(np.clip(lows[-1] + rng.uniform(-12, 12), 5, 60))
        hi = lo + 22.0 + float(rng.uniform(5, 25))
        lows.append(lo)
        highs.append(hi)
    snapped = snap_nice_span(lows + highs)
    lows, highs = snapped[:n], snapped[n:]
    dom = (min(lows), max(highs))
    avg = [round((l + h) / 2, 4) for l, h in zip(lows, highs)]
    fill_dom = (min(avg), max(avg))
    bar_w, gap = 26.0, 10.0

    def to_px(v: float) -> float:
        return CONTENT_H - (v - dom[0]) / (dom[1] - dom[0]) * CONTENT_H

    kids = []
    rows = []
    for i, d in enumerate(days):
        rows.append({"day": d, "low": round(lows[i], 4), "high": round(highs[i], 4),
                     "avg": avg[i]})
        kids.append(_leaf(fill_for_value(avg[i], fill_dom), label=d, width=bar_w,
                          top=to_px(highs[i]), bottom=to_px(lows[i])))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap, children=kids,
                     height=CONTENT_H, level_name="day")
    solve(root)
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(days, [(k.box[0], k.box[2]) for k in kids]),
        y_axis=_y_axis_numeric(dom),
        legend=LegendSpec("Continuous", stops=GRADIENT,
                          tick_labels=[f"{dom[0]:g}", f"{(dom[0]+dom[1])/2:g}", f"{dom[1]:g}"]),
        title="daily range",
    )
    return ChartBuild(
        archetype="range", seed=seed, root=root,
        columns=[("day", "Categorical"), ("low", "Quantitative"),
                 ("high", "Quantitative"), ("avg", "Quantitative")],
        rows=rows, level_fields=["day"],
        encoding_choices=[{"channel": "topSide", "field": "high"},
                          {"channel": "bottomSide", "field": "low"},
                          {"channel": "fill", "field": "avg"}],
        decor=decor,
        expected=_expected(
            depth=1,
            levels=[[("HGrid", None, "Collection")]],
            encodings=[("topSide", "mark", 1), ("bottomSide", "mark", 1),
                       ("fill", "mark", 1)],
        ),
    )


def build_waterfall(seed: int) -> ChartBuild:
    rng = _rng(seed, "waterfall")
    n = 6
    steps = _cat_labels("step", n)
    deltas = [float(rng.integers(15, 60))]
    for _ in range(n - 1):
        d = float(rng.integers(10, 50)) * (1 if rng.random() < 0.55 else -1)
        deltas.append(d)
    running = [0.0]
    for d in deltas:
        running.append(running[-1] + d)
    running = snap_nice_span(running)
    dom = (min(running), max(running))
    bar_w, gap = 30.0, 8.0

    def to_px(v: float) -> float:
        return CONTENT_H - (v - dom[0]) / (dom[1] - dom[0]) * CONTENT_H

    kids = []
    rows = []
    for i, s in enumerate(steps):
        lo = min(running[i], running[i + 1])
        hi = max(running[i], running[i + 1])
        direction = "Increase" if deltas[i] >= 0 else "Decrease"
        rows.append({"step": s, "low": round(lo, 4), "high": round(hi, 4),
                     "dir": direction})
        kids.append(_leaf("#59a14f" if deltas[i] >= 0 else "#e15759", label=s,
                          width=bar_w, top=to_px(hi), bottom=to_px(lo)))
    root = BoundNode(kind=COLLECTION, category="HGrid", gap=gap, children=kids,
                     height=CONTENT_H, level_name="step")
    solve(root)
    decor = DecorSpec(
        x_axis=_x_axis_from_slots(steps, [(k.box[0], k.box[2]) for k in kids]),
        y_axis=_y_axis_numeric(dom),
        legend=LegendSpec("Discrete", entries=[("Increase", "#59a14f"),
                                               ("Decrease", "#e15759")]),
        title="waterfall",
    )
    return ChartBuild(
        archetype="waterfall", seed=seed, root=root,
        columns=[("step", "Categorical"), ("low", "Quantitative"),
                 ("high", "Quantitative"), ("dir", "Categorical")],
        rows=rows, level_fields=["step"],
        encoding_choices=[{"channel": "topSide", "field": "high"},
                          {"channel": "bottomSide", "field": "low"},
                          {"channel": "fill", "field": "dir"}],
        decor=decor,
        expected=_expected(
            depth=1,
            levels=[[("HGrid", None, "Collection")]],
            encodings=[("topSide", "mark", 1), ("bottomSide", "mark", 1),
                       ("fill", "mark", 1)],
        ),
    )


def build_small_multiples(seed: int) -> ChartBuild:
    rng = _rng(seed, "smallmult")
    panels = _cat_labels("panel", 4)
    bars_per = 3
    bar_w, gap_in = 14.0, 4.0
    panel_w = bars_per * bar_w + (bars_per - 1) * gap_in
    panel_h = 52.0
    # staircase placement: y bands disjoint, x hulls disjoint, so no common
    # group relationship survives and merging aborts into a forest
    xs = snap_nice_span([0.0, 190.0, 65.0, 260.0])
    ys = snap_nice_span([0.0, 63.0, 126.0, 189.0])
    heights = snap_nice_max(list(rng.integers(15, 50, size=4 * bars_per).astype(float)))
    dmax = max(heights)
    for p in range(4):  # every panel tops out at dmax so its hull spans the box
        block = heights[p * bars_per:(p + 1) * bars_per]
        block[int(np.argmax(block))] = dmax
        heights[p * bars_per:(p + 1) * bars_per] = block
    pkids = []
    rows = []
    for pi, p in enumerate(panels):
        kids = []
        for bi in range(bars_per):
            v = heights[pi * bars_per + bi]
            rows.append({"panel": p, "pos": f"B{bi + 1}", "value": v,
                         "px": xs[pi], "py": ys[pi]})
            kids.append(_leaf(PALETTE[0], label=f"B{bi + 1}", width=bar_w,
                              height=v / dmax * panel_h))
        pkids.append(BoundNode(kind=COLLECTION, category="HGrid", gap=gap_in,
                               gravity="Bottom", children=kids, label=p,
                               height=panel_h, x=float(xs[pi]), y=float(ys[pi]),
                               level_name="pos"))
    root = BoundNode(kind=COLLECTION, children=pkids, level_name="panel")
    solve(root)
    decor = DecorSpec(title="small multiples")
    return ChartBuild(
        archetype="small_multiples", seed=seed, root=root,
        columns=[("panel", "Categorical"), ("pos", "Categorical"),
                 ("value", "Quantitative"), ("px", "Quantitative"),
                 ("py", "Quantitative")],
        rows=rows, level_fields=["panel", "pos"],
        encoding_choices=[{"channel": "x", "field": "px"},
                          {"channel": "y", "field": "py"},
                          {"channel": "height", "field": "value"}],
        decor=decor,
        expected=_expected(
            depth=2, forest=True,
            levels=[[("None", None, "Collection")], [("HGrid", "Bottom", "Collection")]],
            encodings=[("x", "level", 1), ("y", "level", 1), ("height", "mark", 2)],
            pe_roots=[True],
        ),
    )


BUILDERS = {
    "bar": build_bar,
    "grouped_bar": build_grouped_bar,
    "stacked_bar": build_stacked_bar,
    "diverging_stacked": build_diverging_stacked,
    "grouped_stacked": build_grouped_stacked,
    "heatmap": build_heatmap,
    "bullet": build_bullet,
    "treemap": build_treemap,
    "marimekko": build_marimekko,
    "range": build_range,
    "waterfall": build_waterfall,
    "small_multiples": build_small_multiples,
}
