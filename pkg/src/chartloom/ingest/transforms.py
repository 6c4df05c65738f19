"""2D affine transforms and SVG transform-attribute parsing."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from ..errors import UnsupportedTransform

_FUNC_RE = re.compile(r"([a-zA-Z]+)\s*\(([^)]*)\)")
_NUM_RE = re.compile(r"[-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?")

SUPPORTED_FUNCTIONS = ("translate", "scale", "rotate", "matrix")


@dataclass(frozen=True)
class AffineMatrix:
    """Standard SVG affine coefficients: maps (x, y) to (a*x + c*y + e, b*x + d*y + f)."""

    a: float = 1.0
    b: float = 0.0
    c: float = 0.0
    d: float = 1.0
    e: float = 0.0
    f: float = 0.0

    def compose(self, other: "AffineMatrix") -> "AffineMatrix":
        """self applied after other (self is the parent transform)."""
        return AffineMatrix(
            a=self.a * other.a + self.c * other.b,
            b=self.b * other.a + self.d * other.b,
            c=self.a * other.c + self.c * other.d,
            d=self.b * other.c + self.d * other.d,
            e=self.a * other.e + self.c * other.f + self.e,
            f=self.b * other.e + self.d * other.f + self.f,
        )

    def apply(self, x: float, y: float) -> tuple[float, float]:
        return (self.a * x + self.c * y + self.e, self.b * x + self.d * y + self.f)

    def is_identity(self, tol: float = 1e-9) -> bool:
        return (
            abs(self.a - 1) < tol
            and abs(self.d - 1) < tol
            and abs(self.b) < tol
            and abs(self.c) < tol
            and abs(self.e) < tol
            and abs(self.f) < tol
        )

    def preserves_axes(self, tol: float = 1e-6) -> bool:
        """True when axis-aligned rectangles stay axis-aligned (incl. 90 degree turns)."""
        return (abs(self.b) < tol and abs(self.c) < tol) or (
            abs(self.a) < tol and abs(self.d) < tol
        )


IDENTITY = AffineMatrix()


def _floats(raw: str) -> list[float]:
    return [float(m.group(0)) for m in _NUM_RE.finditer(raw)]


def parse_transform(attr: str) -> AffineMatrix:
    """Parse a transform attribute into one composed matrix.

    Listed functions compose left to right, matching SVG semantics.
    Raises UnsupportedTransform for anything beyond
    translate/scale/rotate/matrix (e.g. skewX).
    """
    result = IDENTITY
    matched_span = 0
    for m in _FUNC_RE.finditer(attr):
        name = m.group(1).lower()
        args = _floats(m.group(2))
        matched_span += 1
        if name == "translate":
            tx = args[0] if args else 0.0
            ty = args[1] if len(args) > 1 else 0.0
            step = AffineMatrix(e=tx, f=ty)
        elif name == "scale":
            sx = args[0] if args else 1.0
            sy = args[1] if len(args) > 1 else sx
            step = AffineMatrix(a=sx, d=sy)
        elif name == "rotate":
            ang = math.radians(args[0]) if args else 0.0
            cos_a, sin_a = math.cos(ang), math.sin(ang)
            step = AffineMatrix(a=cos_a, b=sin_a, c=-sin_a, d=cos_a)
            if len(args) >= 3:
                cx, cy = args[1], args[2]
                step = (
                    AffineMatrix(e=cx, f=cy)
                    .compose(step)
                    .compose(AffineMatrix(e=-cx, f=-cy))
                )
        elif name == "matrix":
            if len(args) != 6:
                raise UnsupportedTransform(f"matrix() needs 6 numbers, got {len(args)}")
            step = AffineMatrix(*args)
        else:
            raise UnsupportedTransform(f"unsupported transform function {name!r}")
        result = result.compose(step)
    if matched_span == 0 and attr.strip():
        raise UnsupportedTransform(f"unparseable transform {attr!r}")
    return result
