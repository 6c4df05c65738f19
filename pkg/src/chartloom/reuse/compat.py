"""Advisory dataset compatibility check against a schema."""

from __future__ import annotations

from dataclasses import dataclass, field

from .schema import DataSchema
from .table import DataTable


@dataclass
class CompatibilityReport:
    ok: bool
    missing_categorical: int = 0
    missing_quantitative: int = 0
    warnings: list[str] = field(default_factory=list)
    dismissible: bool = True  # schema congruency is advisory, never enforced

    def to_dict(self) -> dict:
        return {
            "ok": self.ok,
            "missingCategorical": self.missing_categorical,
            "missingQuantitative": self.missing_quantitative,
            "warnings": list(self.warnings),
            "dismissible": self.dismissible,
        }


def check_compatibility(schema: DataSchema, table: DataTable) -> CompatibilityReport:
    n_cat = len(table.categorical_names())
    n_quant = len(table.quantitative_names())
    missing_cat = max(0, schema.min_categorical - n_cat)
    missing_quant = max(0, schema.min_quantitative - n_quant)
    warnings = []
    if missing_cat:
        warnings.append(
            f"template asks for at least {schema.min_categorical} categorical "
            f"field(s); the dataset has {n_cat}")
    if missing_quant:
        warnings.append(
            f"template asks for at least {schema.min_quantitative} quantitative "
            f"field(s); the dataset has {n_quant}")
    return CompatibilityReport(
        ok=missing_cat == 0 and missing_quant == 0,
        missing_categorical=missing_cat,
        missing_quantitative=missing_quant,
        warnings=warnings,
    )
