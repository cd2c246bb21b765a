"""Delimited output for sweep results.

The file starts with a '#'-prefixed header block listing every model
parameter and the column schema, followed by a plain CSV header row and
the data.  Floating-point values are printed with 12 significant digits
and the writer adds no timestamps, so identical runs produce identical
bytes.
"""

from __future__ import annotations

import io
import math

import numpy as np

from .sweeps import ResultTable

__all__ = ["format_value", "write_csv", "read_csv"]


def format_value(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    v = float(value)
    if math.isnan(v):
        return "nan"
    return f"{v:.12g}"


def write_csv(table: ResultTable, target) -> None:
    """Write a result table to a path or text file object."""
    if hasattr(target, "write"):
        _write(table, target)
    else:
        with open(target, "w", encoding="utf-8") as fh:
            _write(table, fh)


def _write(table: ResultTable, fh) -> None:
    for key, value in table.meta.items():
        fh.write(f"# {key} = {format_value(value)}\n")
    fh.write(f"# columns: {','.join(table.columns)}\n")
    fh.write(",".join(table.columns) + "\n")
    for row in table.rows:
        fh.write(",".join(format_value(v) for v in row) + "\n")


def dumps(table: ResultTable) -> str:
    buf = io.StringIO()
    _write(table, buf)
    return buf.getvalue()


def read_csv(path) -> ResultTable:
    """Read back a file produced by :func:`write_csv`."""
    meta: dict = {}
    columns: list[str] = []
    rows: list[list[float]] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("columns:"):
                    continue
                key, _, raw = body.partition("=")
                meta[key.strip()] = _parse_scalar(raw.strip())
            elif not columns:
                columns = line.split(",")
            else:
                rows.append([float(tok) for tok in line.split(",")])
    data = np.asarray(rows, dtype=float) if rows else np.empty((0, len(columns)))
    return ResultTable(
        kind=str(meta.get("kind", "")), columns=columns, rows=data, meta=meta
    )


def _parse_scalar(raw: str):
    for cast in (int, float):
        try:
            return cast(raw)
        except ValueError:
            continue
    return raw
