"""Kernel backend selection.

Default is the numba JIT path; set CHARTLOOM_DISABLE_NJIT=1 to force the
pure-numpy implementation (also used automatically when numba cannot be
imported). Both expose fill_geometry / item_bits / warmup with identical
semantics.
"""

from __future__ import annotations

import os
import warnings

_DISABLE = os.environ.get("CHARTLOOM_DISABLE_NJIT", "").strip() in ("1", "true", "yes")

if _DISABLE:
    from . import _kernels_numpy as _impl
    _NAME = "numpy"
else:
    try:
        from . import _kernels_numba as _impl  # type: ignore[no-redef]
        _NAME = "numba"
    except ImportError:  # pragma: no cover - exercised only without numba
        warnings.warn("numba unavailable, falling back to the numpy kernel")
        from . import _kernels_numpy as _impl  # type: ignore[no-redef]
        _NAME = "numpy"


def backend_name() -> str:
    return _NAME


def get_backend(name: str | None = None):
    """Return the kernel module; an explicit name overrides the env default."""
    if name is None:
        return _impl
    if name == "numba":
        from . import _kernels_numba
        return _kernels_numba
    if name == "numpy":
        from . import _kernels_numpy
        return _kernels_numpy
    raise ValueError(f"unknown kernel backend {name!r}")


fill_geometry = _impl.fill_geometry
item_bits = _impl.item_bits
warmup = _impl.warmup
