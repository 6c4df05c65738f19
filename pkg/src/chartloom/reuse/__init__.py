from .compat import CompatibilityReport, check_compatibility
from .plan import MAP_ENCODING, MAP_GROUP_LEVEL, MAP_MARK, ReuseStep, generate_plan, suggest_encoding
from .sample import generate_sample_data
from .schema import DataSchema, case_depth, infer_schema
from .session import ReuseSession
from .table import Column, DataTable

__all__ = [
    "DataTable", "Column", "DataSchema", "infer_schema", "case_depth",
    "generate_sample_data", "check_compatibility", "CompatibilityReport",
    "ReuseStep", "generate_plan", "suggest_encoding", "ReuseSession",
    "MAP_GROUP_LEVEL", "MAP_MARK", "MAP_ENCODING",
]
