"""Exception types shared across the pipeline."""


class ChartloomError(Exception):
    """Base class for all pipeline errors."""


class MalformedSvg(ChartloomError):
    """Input could not be parsed as XML."""


class NoSvgRoot(ChartloomError):
    """Parsed document's root element is not <svg>."""


class UnsupportedTransform(ChartloomError):
    """Transform attribute uses a function outside translate/scale/rotate/matrix."""


class EmptyScene(ChartloomError):
    """No drawable content remains after filtering or stripping."""


class UnknownElement(ChartloomError):
    """Correction payload references an element id not present in the scene."""


class InvalidRegion(ChartloomError):
    """Correction region is empty or degenerate."""


class TierOutOfRange(ChartloomError):
    """Correction addresses a label tier that does not exist."""


class OverlappingCollections(ChartloomError):
    """Clustered collections overlap; caller falls back to position-encoded grouping."""


class UnknownField(ChartloomError):
    """Mapping choice references a column not present in the data table."""


class IncompatibleFieldType(ChartloomError):
    """Chosen field's type does not match what the step expects (advisory)."""


class StepOutOfRange(ChartloomError):
    """Step index is beyond the session cursor or the plan length."""


class UnboundStep(ChartloomError):
    """Final render requested while some plan steps have no recorded choice."""


class AllValuesEqual(ChartloomError):
    """Degenerate scale domain for a position channel."""
