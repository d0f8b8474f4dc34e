"""Deterministic CSV / JSON emission for command results."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from importlib import resources

SCHEMA_VERSION = 1
SIG_DIGITS = 12


def fmt_float(x: float) -> str:
    return f"{x:.{SIG_DIGITS}g}"


def _round(x):
    """Round floats to 12 significant digits; infinities become the string 'inf'."""
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    if isinstance(x, float):
        if math.isinf(x) and x > 0:
            return "inf"
        if not math.isfinite(x):
            raise ValueError(f"non-finite value {x!r} cannot be emitted")
        return float(fmt_float(x))
    if isinstance(x, dict):
        return {k: _round(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_round(v) for v in x]
    if hasattr(x, "item"):  # numpy scalar
        return _round(x.item())
    return x


@dataclass
class OutputRecord:
    command: str
    parameters: dict
    columns: list[str]
    rows: list[dict]
    diagnostics: dict = field(default_factory=dict)
    schema_version: int = SCHEMA_VERSION

    def to_dict(self) -> dict:
        # insertion order is the emitted key order
        return {
            "schema_version": self.schema_version,
            "command": self.command,
            "parameters": _round(self.parameters),
            "columns": list(self.columns),
            "rows": [{c: _round(row[c]) for c in self.columns} for row in self.rows],
            "diagnostics": _round(self.diagnostics),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        return rows_to_csv(self.columns, self.rows)


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, int):
        return str(v)
    if hasattr(v, "item"):
        return _cell(v.item())
    if isinstance(v, float):
        if math.isinf(v) and v > 0:
            return "inf"
        return fmt_float(v)
    return str(v)


def rows_to_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([_cell(row[c]) for c in columns])
    return buf.getvalue()


def _parse_cell(s: str):
    try:
        return int(s)
    except ValueError:
        return float(s)


def parse_csv(text: str) -> tuple[list[str], list[dict]]:
    """Inverse of :func:`rows_to_csv` (numeric cells only)."""
    reader = csv.reader(io.StringIO(text))
    columns = next(reader)
    rows = [dict(zip(columns, map(_parse_cell, r))) for r in reader]
    return columns, rows


def load_schema() -> dict:
    return json.loads(resources.files(__package__).joinpath("output.schema.json").read_text("utf-8"))
