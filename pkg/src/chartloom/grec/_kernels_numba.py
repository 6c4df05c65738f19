"""JIT-compiled pairwise relation kernel.

The O(n^2) matrix fill with the third-rectangle cleanliness test dominates
deconstruction time on dense charts (an 8K-cell heatmap means ~32M pairs),
hence the nopython kernel. The numpy twin in _kernels_numpy must stay
behaviorally identical; tests compare them cell by cell.
"""

from __future__ import annotations

import numpy as np
from numba import njit

# Interior penetration below this counts as touching. Mirrors geometry.EPS_PEN.
EPS_PEN = 0.05

BIT_HS = 1
BIT_VS = 2
BIT_HG = 4
BIT_VG = 8
BIT_OV = 32


@njit(cache=True)
def _union_clean(i, j, x0, y0, x1, y1):
    ux0 = min(x0[i], x0[j])
    uy0 = min(y0[i], y0[j])
    ux1 = max(x1[i], x1[j])
    uy1 = max(y1[i], y1[j])
    n = x0.size
    for k in range(n):
        if k == i or k == j:
            continue
        sx = max(ux0, x0[k]) - min(ux1, x1[k])
        if sx >= -EPS_PEN:
            continue
        sy = max(uy0, y0[k]) - min(uy1, y1[k])
        if sy < -EPS_PEN:
            return False
    return True


@njit(cache=True)
def fill_geometry(x0, y0, x1, y1, eps_stack, eps_align):
    """Stack/grid/overlap bits, nearest-edge gaps and per-item nearest gap."""
    n = x0.size
    m = n * (n - 1) // 2
    cats = np.zeros(m, np.uint8)
    gaps = np.zeros(m, np.float32)
    nn = np.full(n, np.inf, np.float64)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            sx = max(x0[i], x0[j]) - min(x1[i], x1[j])
            sy = max(y0[i], y0[j]) - min(y1[i], y1[j])
            if sx < -EPS_PEN and sy < -EPS_PEN:
                cats[k] = BIT_OV
                gaps[k] = -1.0
                k += 1
                continue
            gap = sx if sx > sy else sy
            if gap < 0.0:
                gap = 0.0
            gaps[k] = gap
            if gap < nn[i]:
                nn[i] = gap
            if gap < nn[j]:
                nn[j] = gap
            bits = 0
            if -EPS_PEN <= sx < eps_stack:
                if abs(y0[i] - y0[j]) <= eps_align and abs(y1[i] - y1[j]) <= eps_align:
                    bits |= BIT_HS
            if -EPS_PEN <= sy < eps_stack:
                if abs(x0[i] - x0[j]) <= eps_align and abs(x1[i] - x1[j]) <= eps_align:
                    bits |= BIT_VS
            if sx >= eps_stack and sy <= EPS_PEN:
                bits |= BIT_HG
            if sy >= eps_stack and sx <= EPS_PEN:
                bits |= BIT_VG
            if bits != 0 and not _union_clean(i, j, x0, y0, x1, y1):
                bits = 0
            cats[k] = bits
            k += 1
    return cats, gaps, nn


@njit(cache=True)
def item_bits(cats, n):
    """Bitwise OR of every cell touching each item (partner availability)."""
    out = np.zeros(n, np.uint8)
    k = 0
    for i in range(n):
        for j in range(i + 1, n):
            out[i] |= cats[k]
            out[j] |= cats[k]
            k += 1
    return out


def warmup() -> None:
    """Force compilation so timed runs measure steady state."""
    x0 = np.array([0.0, 2.0, 4.0])
    y0 = np.zeros(3)
    x1 = x0 + 1.0
    y1 = y0 + 1.0
    cats, gaps, nn = fill_geometry(x0, y0, x1, y1, 1.0, 1.0)
    item_bits(cats, 3)
