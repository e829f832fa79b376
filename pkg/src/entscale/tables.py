"""Self-describing result tables with deterministic CSV and JSON forms.

CSV dialect: comma separated, UTF-8, LF line endings, '#'-prefixed header
lines carrying the metadata (schema version, generating command, parameter
echo, library version).  No field ever contains a comma, so there is no
quoting.  Floats are written with 17 significant digits, which round-trips
IEEE doubles exactly; rerunning the echoed command must reproduce the file
byte for byte.
"""
from __future__ import annotations

import io
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import SchemaError

SCHEMA_VERSION = 1

__all__ = ["ResultTable", "SCHEMA_VERSION", "read_table"]


def _format_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        if math.isnan(value):
            return "nan"
        return format(value, ".17g")
    return str(value)


def _parse_value(text: str):
    if text == "true":
        return True
    if text == "false":
        return False
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        return text


@dataclass
class ResultTable:
    """Columnar results plus the metadata needed to reproduce them."""

    columns: list[str]
    rows: list[tuple]
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise SchemaError(
                    f"row {i} has {len(row)} fields for {len(self.columns)} columns"
                )

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise SchemaError(f"table has no column {name!r}; columns are {self.columns}")
        i = self.columns.index(name)
        return [row[i] for row in self.rows]

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write(f"# schema={SCHEMA_VERSION}\n")
        for key in sorted(self.meta):
            out.write(f"# {key}={_format_value(self.meta[key])}\n")
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(_format_value(v) for v in row) + "\n")
        return out.getvalue()

    def to_json(self) -> str:
        payload = {
            "meta": {"schema": SCHEMA_VERSION, **self.meta},
            "columns": self.columns,
            "rows": [list(row) for row in self.rows],
        }
        return json.dumps(payload, indent=2, sort_keys=True, allow_nan=True) + "\n"

    def dump(self, fmt: str = "csv") -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise SchemaError(f"unknown format {fmt!r}")

    def write(self, path: str | Path, fmt: str | None = None) -> None:
        path = Path(path)
        if fmt is None:
            fmt = "json" if path.suffix == ".json" else "csv"
        path.write_text(self.dump(fmt), encoding="utf-8")

    @classmethod
    def from_csv(cls, text: str) -> "ResultTable":
        meta: dict = {}
        columns: list[str] | None = None
        rows: list[tuple] = []
        for line in text.splitlines():
            if not line.strip():
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if "=" in body:
                    key, _, value = body.partition("=")
                    meta[key.strip()] = _parse_value(value.strip())
                continue
            if columns is None:
                columns = [c.strip() for c in line.split(",")]
                continue
            rows.append(tuple(_parse_value(v) for v in line.split(",")))
        if columns is None:
            raise SchemaError("CSV input has no column header line")
        schema = meta.pop("schema", None)
        if schema is not None and schema != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema version {schema}; this build reads {SCHEMA_VERSION}")
        return cls(columns=columns, rows=rows, meta=meta)

    @classmethod
    def from_json(cls, text: str) -> "ResultTable":
        try:
            payload = json.loads(text)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON table: {exc}") from exc
        for key in ("meta", "columns", "rows"):
            if key not in payload:
                raise SchemaError(f"JSON table lacks the {key!r} member")
        meta = dict(payload["meta"])
        schema = meta.pop("schema", None)
        if schema is not None and schema != SCHEMA_VERSION:
            raise SchemaError(f"unsupported schema version {schema}; this build reads {SCHEMA_VERSION}")
        return cls(
            columns=list(payload["columns"]),
            rows=[tuple(row) for row in payload["rows"]],
            meta=meta,
        )


def read_table(path: str | Path) -> ResultTable:
    """Load a table, deciding the format from the content."""
    text = Path(path).read_text(encoding="utf-8")
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return ResultTable.from_json(text)
    return ResultTable.from_csv(text)
