"""Reader for entscale result tables (schema version 1).

This package talks to the solver toolkit only through its published table
formats, so the parser here is intentionally independent of it: CSV with
'#'-prefixed ``key=value`` metadata lines, or JSON with a top-level
``{meta, columns, rows}`` object.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

SUPPORTED_SCHEMA = 1


class PlotInputError(ValueError):
    """Base class for unusable plot input."""


class SchemaVersionError(PlotInputError):
    """The table declares a schema this reader does not support."""


class MissingColumnError(PlotInputError):
    """A required column is absent from the table."""


class EmptyTableError(PlotInputError):
    """The table parses but carries no data rows."""


def _parse_scalar(text: str):
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
class Table:
    columns: list[str]
    rows: list[tuple]
    meta: dict = field(default_factory=dict)
    source: str = ""

    def column(self, name: str) -> list:
        if name not in self.columns:
            raise MissingColumnError(
                f"{self.source or 'table'} lacks required column {name!r}; has {self.columns}"
            )
        index = self.columns.index(name)
        return [row[index] for row in self.rows]

    def floats(self, name: str) -> list[float]:
        return [float(value) for value in self.column(name)]


def _check_schema(version, source: str) -> None:
    if version is not None and version != SUPPORTED_SCHEMA:
        raise SchemaVersionError(
            f"{source}: schema version {version} is not supported; this reader handles "
            f"version {SUPPORTED_SCHEMA}"
        )


def parse_csv(text: str, source: str = "csv input") -> Table:
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
                meta[key.strip()] = _parse_scalar(value.strip())
            continue
        if columns is None:
            columns = [c.strip() for c in line.split(",")]
            continue
        rows.append(tuple(_parse_scalar(v) for v in line.split(",")))
    if columns is None:
        raise PlotInputError(f"{source}: no column header found")
    _check_schema(meta.pop("schema", None), source)
    return Table(columns=columns, rows=rows, meta=meta, source=source)


def parse_json(text: str, source: str = "json input") -> Table:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PlotInputError(f"{source}: invalid JSON: {exc}") from exc
    for key in ("meta", "columns", "rows"):
        if key not in payload:
            raise PlotInputError(f"{source}: missing {key!r} member")
    meta = dict(payload["meta"])
    _check_schema(meta.pop("schema", None), source)
    return Table(
        columns=list(payload["columns"]),
        rows=[tuple(row) for row in payload["rows"]],
        meta=meta,
        source=source,
    )


def load_table(path: str | Path) -> Table:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return parse_json(text, source=str(path))
    return parse_csv(text, source=str(path))


def require_rows(table: Table) -> Table:
    if not table.rows:
        raise EmptyTableError(f"{table.source or 'table'} has no data rows")
    return table
