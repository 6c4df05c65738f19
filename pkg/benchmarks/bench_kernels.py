"""Compare the JIT and pure-numpy relation kernels.

Run:  python3 benchmarks/bench_kernels.py [--sizes 500,1000,2000]

The pairwise matrix dominates deconstruction on dense charts; this prints
per-backend timings for the kernel alone and for a full heatmap
deconstruction, so regressions in either path are visible.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from chartloom.corpus.builders import build_heatmap
from chartloom.corpus.emit import emit_chart
from chartloom.corpus.generate import deconstruct_svg
from chartloom.grec import backend
from chartloom.grec.matrix import boxes_to_arrays


def lattice(n: int) -> list[tuple]:
    cols = int(np.ceil(np.sqrt(n * 1.3)))
    rows = int(np.ceil(n / cols))
    boxes = []
    for r in range(rows):
        for c in range(cols):
            if len(boxes) == n:
                break
            x, y = c * 22.0, r * 22.0
            boxes.append((x, y, x + 20.0, y + 20.0))
    return boxes


def time_kernel(impl, boxes, repeats: int = 3) -> float:
    x0, y0, x1, y1 = boxes_to_arrays(boxes)
    impl.fill_geometry(x0[:4], y0[:4], x1[:4], y1[:4], 1.0, 1.0)  # compile/warm
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        impl.fill_geometry(x0, y0, x1, y1, 1.0, 1.0)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser()
    parser.add_argument("--sizes", default="250,500,1000,2000",
                        type=lambda s: [int(x) for x in s.split(",")])
    args = parser.parse_args()

    numba_impl = backend.get_backend("numba")
    numpy_impl = backend.get_backend("numpy")

    print(f"{'n':>6} {'pairs':>10} {'numba':>10} {'numpy':>10} {'speedup':>8}")
    for n in args.sizes:
        boxes = lattice(n)
        t_nb = time_kernel(numba_impl, boxes)
        t_np = time_kernel(numpy_impl, boxes)
        pairs = n * (n - 1) // 2
        print(f"{n:>6} {pairs:>10} {t_nb:>9.3f}s {t_np:>9.3f}s {t_np / t_nb:>7.1f}x")

    print("\nfull pipeline (80x100 heatmap, 8000 rects, default backend:"
          f" {backend.backend_name()})")
    svg = emit_chart(build_heatmap(1, rows_n=80, cols_n=100), "B")
    t0 = time.perf_counter()
    deconstruct_svg(svg)
    print(f"  ingest + detect + strip + deconstruct: {time.perf_counter() - t0:.2f}s")


if __name__ == "__main__":
    main()
