"""Linear and band scales with nice-number domain rounding."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence, Union

from ..errors import AllValuesEqual

SIZE_CHANNELS = {"width", "height", "area"}
POSITION_CHANNELS = {"x", "y", "topSide", "bottomSide", "leftSide", "rightSide"}


def nice_step(rough: float) -> float:
    """Round a rough tick step up to 1/2/5 x 10^k."""
    if rough <= 0:
        return 1.0
    mag = 10.0 ** math.floor(math.log10(rough))
    frac = rough / mag
    for m in (1.0, 2.0, 5.0, 10.0):
        if frac <= m + 1e-12:
            return m * mag
    return 10.0 * mag


def nice_ceil(v: float, divisions: int = 5) -> float:
    if v <= 0:
        return 0.0
    step = nice_step(v / divisions)
    # relative slack: sub-ppm overshoot from float accumulation stays put
    return math.ceil(v / step - 1e-6) * step


def nice_floor(v: float, span: float, divisions: int = 5) -> float:
    step = nice_step(max(span, abs(v), 1e-9) / divisions)
    return math.floor(v / step + 1e-9) * step


@dataclass
class Scale:
    kind: str  # "Linear" | "Band"
    domain: Union[tuple[float, float], list[str]]
    range: tuple[float, float]
    band_padding: float = 0.0
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind == "Band":
            self._index = {c: i for i, c in enumerate(self.domain)}

    def __call__(self, v):
        if self.kind == "Linear":
            d0, d1 = self.domain
            r0, r1 = self.range
            if d1 == d0:
                return r0
            return r0 + (float(v) - d0) / (d1 - d0) * (r1 - r0)
        return self.band_start(v)

    def invert(self, px: float) -> float:
        d0, d1 = self.domain  # type: ignore[misc]
        r0, r1 = self.range
        if r1 == r0:
            return d0
        return d0 + (px - r0) / (r1 - r0) * (d1 - d0)

    @property
    def band_width(self) -> float:
        n = len(self.domain)
        r0, r1 = self.range
        # n bands, inner gaps and outer margins all padding*band wide:
        # extent = band * (n + padding * (n + 1))
        return (r1 - r0) / (n + self.band_padding * (n + 1))

    def band_start(self, category) -> float:
        i = self._index[category]
        band = self.band_width
        pad = self.band_padding * band
        return self.range[0] + pad + i * (band + pad)

    def band_center(self, category) -> float:
        return self.band_start(category) + self.band_width / 2

    def ticks(self, count: int = 5) -> list[float]:
        if self.kind != "Linear":
            return []
        d0, d1 = self.domain  # type: ignore[misc]
        if d1 <= d0:
            return [d0]
        step = nice_step((d1 - d0) / count)
        t = math.ceil(d0 / step) * step
        out = []
        while t <= d1 + 1e-9:
            out.append(round(t, 10))
            t += step
        return out


def build_scale(channel: str, values: Sequence, pixel_extent: tuple[float, float],
                band_padding: float = 0.1) -> Scale:
    """Construct the scale for one encoding.

    Size channels get a zero baseline; position channels span the data with
    nice rounding. A degenerate position domain raises AllValuesEqual, while a
    degenerate size domain falls back to [0, v].
    """
    if not len(values):
        raise ValueError("cannot build a scale over no values")
    first = values[0]
    numeric = isinstance(first, (int, float)) and not isinstance(first, bool)
    if not numeric:
        cats: list[str] = []
        for v in values:
            if v not in cats:
                cats.append(v)
        return Scale("Band", cats, pixel_extent, band_padding=band_padding)

    vmax = max(float(v) for v in values)
    vmin = min(float(v) for v in values)
    if channel in SIZE_CHANNELS or channel == "gap":
        if vmax == vmin:
            return Scale("Linear", (0.0, vmax if vmax > 0 else 1.0), pixel_extent)
        return Scale("Linear", (0.0, nice_ceil(vmax)), pixel_extent)
    if vmax == vmin:
        raise AllValuesEqual(f"all values equal ({vmax}) for position channel {channel}")
    span = vmax - vmin
    return Scale("Linear", (nice_floor(vmin, span), nice_ceil(vmax)), pixel_extent)
