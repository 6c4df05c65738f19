from .layouts import layout_grid, layout_pack, layout_stack, squarify
from .render import MODE_FINAL, MODE_PARTIAL, render_chart
from .scales import Scale, build_scale, nice_ceil, nice_floor, nice_step
from .solver import BoundNode, solve

__all__ = [
    "Scale", "build_scale", "nice_ceil", "nice_floor", "nice_step",
    "layout_stack", "layout_grid", "layout_pack", "squarify",
    "BoundNode", "solve", "render_chart", "MODE_FINAL", "MODE_PARTIAL",
]
