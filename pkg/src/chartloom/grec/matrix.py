"""Pairwise distance function and matrix construction.

The distance function classifies a pair of items (rects or group hulls) into
the applicable relation categories:

* stack: abutting along one axis with matching cross intervals,
* grid: separated along one axis with overlapping cross intervals,
* packing: nearest-edge gap agreeing with the scene's universal gap,
* overlapping / null sentinels otherwise.

Stack and grid additionally require that the union of the two boxes touches
no third item, which keeps chains local to actual neighbors.
"""

from __future__ import annotations

from typing import Optional, Sequence

import numpy as np

from ..config import DEFAULT_CONFIG, Config
from ..geometry import EPS_PEN, Box, interval_sep, nearest_edge_gap
from . import backend
from .model import (
    BIT_HG,
    BIT_HS,
    BIT_OV,
    BIT_P,
    BIT_VG,
    BIT_VS,
    DistanceMatrix,
    RelationSet,
)


def boxes_to_arrays(boxes: Sequence[Box]):
    arr = np.asarray(boxes, dtype=np.float64)
    return arr[:, 0].copy(), arr[:, 1].copy(), arr[:, 2].copy(), arr[:, 3].copy()


def universal_gap(boxes: Sequence[Box], config: Config = DEFAULT_CONFIG,
                  nn: Optional[np.ndarray] = None) -> Optional[float]:
    """The scene-wide packing gap, when one exists.

    Every item's nearest-edge gap to its nearest non-overlapping neighbor
    must agree within eps_gap, and the shared value must sit between the
    abutment threshold and the packing cap. Inconsistent neighborhoods rule
    packing out for the whole item set.
    """
    if nn is None:
        n = len(boxes)
        if n < 2:
            return None
        nn_list = []
        for i in range(n):
            best = np.inf
            for j in range(n):
                if i == j:
                    continue
                sx = interval_sep(boxes[i][0], boxes[i][2], boxes[j][0], boxes[j][2])
                sy = interval_sep(boxes[i][1], boxes[i][3], boxes[j][1], boxes[j][3])
                if sx < -EPS_PEN and sy < -EPS_PEN:
                    continue
                best = min(best, max(sx, sy, 0.0))
            nn_list.append(best)
        nn = np.asarray(nn_list)
    finite = nn[np.isfinite(nn)]
    if finite.size < 2:
        return None
    if float(finite.max() - finite.min()) >= config.eps_gap:
        return None
    g = float(np.median(finite))
    if g < config.eps_stack or g > config.packing_gap_cap:
        return None
    return g


def pair_distance(a: Box, b: Box, context: Sequence[Box],
                  config: Config = DEFAULT_CONFIG,
                  gstar: Optional[float] = None) -> RelationSet:
    """Reference per-pair classifier; the kernels must agree with this."""
    sx = interval_sep(a[0], a[2], b[0], b[2])
    sy = interval_sep(a[1], a[3], b[1], b[3])
    if sx < -EPS_PEN and sy < -EPS_PEN:
        return RelationSet(BIT_OV, -1.0)
    gap = max(sx, sy, 0.0)
    bits = 0
    ymatch = abs(a[1] - b[1]) <= config.eps_align and abs(a[3] - b[3]) <= config.eps_align
    xmatch = abs(a[0] - b[0]) <= config.eps_align and abs(a[2] - b[2]) <= config.eps_align
    if -EPS_PEN <= sx < config.eps_stack and ymatch:
        bits |= BIT_HS
    if -EPS_PEN <= sy < config.eps_stack and xmatch:
        bits |= BIT_VS
    if sx >= config.eps_stack and sy <= EPS_PEN:
        bits |= BIT_HG
    if sy >= config.eps_stack and sx <= EPS_PEN:
        bits |= BIT_VG
    if bits and not _union_clean_py(a, b, context):
        bits = 0
    if gstar is None:
        gstar = universal_gap(context, config)
    if gstar is not None and abs(gap - gstar) < config.eps_gap:
        bits |= BIT_P
    return RelationSet(bits, gap)


def _union_clean_py(a: Box, b: Box, context: Sequence[Box]) -> bool:
    ux0, uy0 = min(a[0], b[0]), min(a[1], b[1])
    ux1, uy1 = max(a[2], b[2]), max(a[3], b[3])
    for c in context:
        if c is a or c is b or c == a or c == b:
            continue
        if (interval_sep(ux0, ux1, c[0], c[2]) < -EPS_PEN
                and interval_sep(uy0, uy1, c[1], c[3]) < -EPS_PEN):
            return False
    return True


def build_distance_matrix(boxes: Sequence[Box], config: Config = DEFAULT_CONFIG,
                          items: Optional[list[int]] = None,
                          kernel: Optional[str] = None) -> DistanceMatrix:
    """Fill the upper triangle for every pair via the selected kernel."""
    n = len(boxes)
    if n < 2:
        raise ValueError("a distance matrix needs at least 2 items")
    impl = backend.get_backend(kernel)
    x0, y0, x1, y1 = boxes_to_arrays(boxes)
    cats, gaps, nn = impl.fill_geometry(x0, y0, x1, y1, config.eps_stack, config.eps_align)
    gstar = universal_gap(boxes, config, nn=nn)
    if gstar is not None:
        not_ov = cats != BIT_OV
        close = np.abs(gaps - np.float32(gstar)) < config.eps_gap
        cats = cats | np.where(not_ov & close, np.uint8(BIT_P), np.uint8(0))
    return DistanceMatrix(
        n=n, cats=cats, gaps=gaps,
        items=items if items is not None else list(range(n)),
        universal_gap=gstar,
    )
