"""Tabular data: CSV import with per-column type inference."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..decorations.detect import infer_field_type
from ..decorations.model import CATEGORICAL, DATE, QUANTITATIVE
from ..errors import UnknownField


@dataclass
class Column:
    name: str
    field_type: str
    values: list

    def numeric(self) -> list[float]:
        return [float(v) for v in self.values]


@dataclass
class DataTable:
    columns: list[Column] = field(default_factory=list)

    @property
    def row_count(self) -> int:
        return len(self.columns[0].values) if self.columns else 0

    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> Column:
        for c in self.columns:
            if c.name == name:
                return c
        raise UnknownField(f"no column named {name!r}")

    def has(self, name: str) -> bool:
        return any(c.name == name for c in self.columns)

    def categorical_names(self) -> list[str]:
        return [c.name for c in self.columns if c.field_type in (CATEGORICAL, DATE)]

    def quantitative_names(self) -> list[str]:
        return [c.name for c in self.columns if c.field_type == QUANTITATIVE]

    def rows(self) -> list[dict]:
        return [
            {c.name: c.values[i] for c in self.columns}
            for i in range(self.row_count)
        ]

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\r\n")
        writer.writerow(self.names())
        for i in range(self.row_count):
            writer.writerow([_cell(c.values[i]) for c in self.columns])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {"columns": [
            {"name": c.name, "fieldType": c.field_type, "values": list(c.values)}
            for c in self.columns]}

    @classmethod
    def from_dict(cls, raw: dict) -> "DataTable":
        return cls(columns=[Column(c["name"], c["fieldType"], list(c["values"]))
                            for c in raw["columns"]])

    @classmethod
    def from_rows(cls, rows: Sequence[dict], order: Optional[list[str]] = None) -> "DataTable":
        if not rows:
            raise ValueError("need at least one data row")
        names = order or list(rows[0].keys())
        columns = []
        for name in names:
            raw_vals = [r[name] for r in rows]
            columns.append(_typed_column(name, raw_vals))
        return cls(columns)

    @classmethod
    def from_csv(cls, text: str) -> "DataTable":
        reader = csv.reader(io.StringIO(text))
        table = list(reader)
        if not table or len(table) < 2:
            raise ValueError("CSV needs a header row and at least one data row")
        header = [h.strip() for h in table[0]]
        if len(set(header)) != len(header):
            raise ValueError("CSV column names must be unique")
        body = [row for row in table[1:] if any(cell.strip() for cell in row)]
        columns = []
        for k, name in enumerate(header):
            raw_vals = [row[k].strip() if k < len(row) else "" for row in body]
            columns.append(_typed_column(name, raw_vals))
        return cls(columns)


def _cell(v) -> str:
    if isinstance(v, float) and v == int(v):
        return str(int(v))
    return str(v)


def _typed_column(name: str, raw_vals: list) -> Column:
    as_str = [str(v) for v in raw_vals]
    ftype = infer_field_type(as_str) if as_str else CATEGORICAL
    if ftype == QUANTITATIVE:
        return Column(name, ftype, [float(str(v).replace(",", "")) for v in raw_vals])
    return Column(name, ftype, as_str)
