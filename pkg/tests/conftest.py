import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from chartloom.grec import backend
from chartloom.ingest.scene import KIND_RECT, NormalizedScene, SceneElement


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    """Compile the JIT kernels once so timed tests measure steady state."""
    backend.warmup()


def rect_scene(boxes, fills=None, view=(0, 0, 800, 600)) -> NormalizedScene:
    els = []
    for i, (x0, y0, x1, y1) in enumerate(boxes):
        fill = fills[i] if fills else "#4682b4"
        els.append(SceneElement(i, KIND_RECT, x=x0, y=y0, width=x1 - x0,
                                height=y1 - y0, style={"fill": fill}))
    return NormalizedScene(els, view)


@pytest.fixture
def make_scene():
    return rect_scene
