"""chartloom: deconstruct rectangle-based SVG charts and reuse their layouts."""

from .config import DEFAULT_CONFIG, Config

__version__ = "0.1.0"

__all__ = ["Config", "DEFAULT_CONFIG", "__version__"]
