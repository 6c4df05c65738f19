"""Pure-numpy twin of the JIT kernel.

Same contract as _kernels_numba.fill_geometry, selected with
CHARTLOOM_DISABLE_NJIT=1 or when numba is unavailable. Vectorized blockwise;
the union cleanliness test still loops over candidate pairs, so this path is
noticeably slower on dense scenes (see benchmarks/bench_kernels.py).
"""

from __future__ import annotations

import numpy as np

EPS_PEN = 0.05

BIT_HS = 1
BIT_VS = 2
BIT_HG = 4
BIT_VG = 8
BIT_OV = 32

_BLOCK = 512


def fill_geometry(x0, y0, x1, y1, eps_stack, eps_align):
    n = x0.size
    m = n * (n - 1) // 2
    cats = np.zeros(m, np.uint8)
    gaps = np.zeros(m, np.float32)
    nn = np.full(n, np.inf, np.float64)

    for i0 in range(0, n, _BLOCK):
        i1 = min(i0 + _BLOCK, n)
        sx = np.maximum(x0[i0:i1, None], x0[None, :]) - np.minimum(x1[i0:i1, None], x1[None, :])
        sy = np.maximum(y0[i0:i1, None], y0[None, :]) - np.minimum(y1[i0:i1, None], y1[None, :])
        overlap = (sx < -EPS_PEN) & (sy < -EPS_PEN)
        gap = np.maximum(np.maximum(sx, sy), 0.0)

        ymatch = (np.abs(y0[i0:i1, None] - y0[None, :]) <= eps_align) & (
            np.abs(y1[i0:i1, None] - y1[None, :]) <= eps_align)
        xmatch = (np.abs(x0[i0:i1, None] - x0[None, :]) <= eps_align) & (
            np.abs(x1[i0:i1, None] - x1[None, :]) <= eps_align)
        bits = np.zeros(sx.shape, np.uint8)
        bits |= np.where((sx >= -EPS_PEN) & (sx < eps_stack) & ymatch, BIT_HS, 0).astype(np.uint8)
        bits |= np.where((sy >= -EPS_PEN) & (sy < eps_stack) & xmatch, BIT_VS, 0).astype(np.uint8)
        bits |= np.where((sx >= eps_stack) & (sy <= EPS_PEN), BIT_HG, 0).astype(np.uint8)
        bits |= np.where((sy >= eps_stack) & (sx <= EPS_PEN), BIT_VG, 0).astype(np.uint8)
        bits[overlap] = BIT_OV

        for i in range(i0, i1):
            row_bits = bits[i - i0, i + 1:]
            row_gap = gap[i - i0, i + 1:]
            row_ov = overlap[i - i0, i + 1:]
            base = i * (2 * n - i - 1) // 2
            cats[base:base + n - 1 - i] = row_bits
            row_out = row_gap.astype(np.float32)
            row_out[row_ov] = -1.0
            gaps[base:base + n - 1 - i] = row_out
            if np.any(~row_ov):
                finite = row_gap[~row_ov]
                if finite.size:
                    nn[i] = min(nn[i], float(finite.min()))
                    seg = np.where(~row_ov, row_gap, np.inf)
                    nn[i + 1:] = np.minimum(nn[i + 1:], seg)

    # Union cleanliness: only pairs that passed the geometric screen need it.
    candidates = np.nonzero((cats != 0) & (cats != BIT_OV))[0]
    for k in candidates:
        i, j = _pair_of(k, n)
        ux0 = min(x0[i], x0[j]); uy0 = min(y0[i], y0[j])
        ux1 = max(x1[i], x1[j]); uy1 = max(y1[i], y1[j])
        sxk = np.maximum(ux0, x0) - np.minimum(ux1, x1)
        syk = np.maximum(uy0, y0) - np.minimum(uy1, y1)
        hit = (sxk < -EPS_PEN) & (syk < -EPS_PEN)
        hit[i] = hit[j] = False
        if hit.any():
            cats[k] = 0
    return cats, gaps, nn


def _pair_of(k: int, n: int) -> tuple[int, int]:
    # Invert the condensed index: find i with base(i) <= k < base(i+1).
    i = int(n - 2 - np.floor(np.sqrt(-8 * k + 4 * n * (n - 1) - 7) / 2.0 - 0.5))
    base = i * (2 * n - i - 1) // 2
    j = k - base + i + 1
    return i, j


def item_bits(cats, n):
    out = np.zeros(n, np.uint8)
    k = 0
    for i in range(n):
        row = cats[k:k + n - 1 - i]
        if row.size:
            out[i] |= np.bitwise_or.reduce(row)
            np.bitwise_or.at(out, np.arange(i + 1, n), row)
        k += n - 1 - i
    return out


def warmup() -> None:
    x0 = np.array([0.0, 2.0, 4.0])
    y0 = np.zeros(3)
    fill_geometry(x0, y0, x0 + 1.0, y0 + 1.0, 1.0, 1.0)
