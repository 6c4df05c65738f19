"""Rectangle and line recognition for <path> elements.

Charting tools frequently emit rectangle marks as closed paths; the test
below recovers them. Curve commands disqualify a path immediately.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

_TOKEN_RE = re.compile(r"([MmLlHhVvZzCcSsQqTtAa])|([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)")

LINEAR_COMMANDS = set("MmLlHhVvZz")


@dataclass(frozen=True)
class PathRect:
    x: float
    y: float
    width: float
    height: float


@dataclass(frozen=True)
class PathLine:
    x1: float
    y1: float
    x2: float
    y2: float


def _vertices(d: str) -> Optional[list[tuple[float, float]]]:
    tokens = _TOKEN_RE.findall(d)
    verts: list[tuple[float, float]] = []
    cx = cy = 0.0
    cmd = None
    nums: list[float] = []

    def flush():
        nonlocal cx, cy, nums
        if cmd is None:
            return True
        if cmd in "Mm" or cmd in "Ll":
            if len(nums) % 2:
                return False
            for i in range(0, len(nums), 2):
                if cmd.islower():
                    cx, cy = cx + nums[i], cy + nums[i + 1]
                else:
                    cx, cy = nums[i], nums[i + 1]
                verts.append((cx, cy))
        elif cmd in "Hh":
            for n in nums:
                cx = cx + n if cmd.islower() else n
                verts.append((cx, cy))
        elif cmd in "Vv":
            for n in nums:
                cy = cy + n if cmd.islower() else n
                verts.append((cx, cy))
        nums = []
        return True

    for letter, number in tokens:
        if letter:
            if letter not in LINEAR_COMMANDS:
                return None  # curves and arcs are out of scope
            if not flush():
                return None
            cmd = letter
            if letter in "Zz":
                cmd = None
        else:
            nums.append(float(number))
    if not flush():
        return None
    return verts


def _dedup_cycle(verts: list[tuple[float, float]], tol: float) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for v in verts:
        if out and abs(v[0] - out[-1][0]) <= tol and abs(v[1] - out[-1][1]) <= tol:
            continue
        out.append(v)
    if len(out) > 1 and abs(out[0][0] - out[-1][0]) <= tol and abs(out[0][1] - out[-1][1]) <= tol:
        out.pop()
    return out


def path_to_shape(d: str, tol: float = 0.5) -> Union[PathRect, PathLine, None]:
    """Classify path data as an axis-aligned rectangle, a 2-point line, or neither.

    The vertex cycle is deduplicated with the given tolerance before testing;
    unparseable data yields None rather than raising.
    """
    verts = _vertices(d)
    if not verts:
        return None
    verts = _dedup_cycle(verts, tol)
    if len(verts) == 2:
        (x1, y1), (x2, y2) = verts
        return PathLine(x1, y1, x2, y2)
    if len(verts) != 4:
        return None
    xs = sorted(v[0] for v in verts)
    ys = sorted(v[1] for v in verts)
    if abs(xs[0] - xs[1]) > tol or abs(xs[2] - xs[3]) > tol:
        return None
    if abs(ys[0] - ys[1]) > tol or abs(ys[2] - ys[3]) > tol:
        return None
    # Perimeter order check: consecutive edges must alternate axis directions.
    for i in range(4):
        (ax, ay), (bx, by) = verts[i], verts[(i + 1) % 4]
        dx, dy = abs(ax - bx), abs(ay - by)
        if dx > tol and dy > tol:
            return None  # diagonal edge: not an axis-aligned rectangle
    width = xs[2] - xs[0]
    height = ys[2] - ys[0]
    if width <= tol or height <= tol:
        return None
    return PathRect(xs[0], ys[0], width, height)
