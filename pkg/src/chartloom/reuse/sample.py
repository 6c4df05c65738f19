"""Sample dataset synthesis from a template's schema and decorations."""

from __future__ import annotations

import itertools
import string
from typing import Optional

import numpy as np

from ..decorations.model import CATEGORICAL, QUANTITATIVE
from ..grec.model import GrecTemplate
from .schema import DataSchema, case_depth
from .table import Column, DataTable


def _level_cardinalities(template: GrecTemplate, depth_needed: int) -> list[int]:
    levels = template.levels()
    out = []
    for d in range(1, depth_needed + 1):
        parents = levels[d - 1]
        counts = [len(p.children) for p in parents if p.children]
        out.append(max(counts) if counts else 2)
    return out


def _label_sources(template: GrecTemplate) -> list[list[str]]:
    """Axis tiers and legend entries recorded on the template, outermost first."""
    sources: list[list[str]] = []
    deco = template.decoration or {}
    for axis_key in ("xAxis", "yAxis"):
        axis = deco.get(axis_key)
        if axis:
            for tier in reversed(axis.get("tiers", [])):  # higher tiers are outer levels
                if tier:
                    sources.append(list(tier))
    legend = deco.get("legend") or {}
    entries = [e[0] for e in legend.get("entries", [])]
    if entries:
        sources.append(entries)
    return sources


def generate_sample_data(schema: DataSchema, template: GrecTemplate,
                         seed: int = 0) -> DataTable:
    """One column per required field; label values are borrowed from axis or
    legend text when the cardinality matches, otherwise synthesized. Rows are
    the full cross product of the categorical values with one quantitative
    draw per row."""
    rng = np.random.default_rng(seed)
    n_cat = max(schema.min_categorical, 1)  # an index column keeps the table joinable
    n_quant = schema.min_quantitative
    cards = _level_cardinalities(template, min(schema.c_group, case_depth(template)))
    while len(cards) < n_cat:
        cards.append(3)
    sources = _label_sources(template)

    cat_values: list[list[str]] = []
    for k, card in enumerate(cards[:n_cat]):
        match = next((s for s in sources if len(s) == card), None)
        if match is not None:
            sources.remove(match)
            cat_values.append(list(match))
        else:
            letter = string.ascii_uppercase[k % 26]
            cat_values.append([f"{letter}{i + 1}" for i in range(card)])

    columns = [Column(f"cat{k + 1}", CATEGORICAL, []) for k in range(n_cat)]
    quant_cols = [Column(f"num{k + 1}", QUANTITATIVE, []) for k in range(n_quant)]
    for combo in itertools.product(*cat_values):
        for col, val in zip(columns, combo):
            col.values.append(val)
        for qc in quant_cols:
            qc.values.append(float(round(rng.uniform(0, 100), 2)))
    return DataTable(columns + quant_cols)
