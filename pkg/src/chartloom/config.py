"""Tunable thresholds for the whole pipeline.

Every geometric tolerance lives here so exported artifacts can embed the
exact configuration that produced them and a re-run can reproduce byte
identical output.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, fields


@dataclass(frozen=True)
class Config:
    # svg ingest
    rect_vertex_tol: float = 0.5        # dedup tolerance for the path rectangle test
    background_area_fraction: float = 0.95
    offscreen_factor: float = 2.0       # elements fully outside factor*viewBox are dropped
    line_as_rect: bool = False          # treat thick <line> (>= min stroke) as candidate rect
    line_as_rect_min_stroke: float = 6.0

    # decoration detection
    collinear_tol: float = 2.0
    tick_len_max: float = 8.0
    tick_pair_radius: float = 10.0
    axis_line_span: float = 0.8         # fraction of label extent an axis line must span
    grid_line_span: float = 0.8         # fraction of plot extent a grid line must span
    legend_mark_area_fraction: float = 0.01

    # relation matrix / clustering
    eps_stack: float = 1.0              # abutment: gap < eps_stack counts as touching
    eps_align: float = 1.0              # edge/interval match tolerance
    eps_gap: float = 1.0                # gap consistency tolerance
    packing_gap_cap: float = 5.0        # universal packing gap must not exceed this

    # rendering
    band_padding: float = 0.1
    fade_opacity: float = 0.3
    highlight_stroke_width: float = 2.0
    aggregation: str = "sum"            # group value from leaf values

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, raw: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in raw.items() if k in known})


DEFAULT_CONFIG = Config()
