"""Reading and writing scan tables as CSV or JSON lines."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .core import Element
from .errors import ScanFormatError
from .invariants import INVARIANTS, ScanRecord, ScanTable

SET_COLUMNS = {"lengths", "delta"}
INT_COLUMNS = {"z_count", "max_len", "min_len", "omega", "catenary"}


def format_element(e: Element) -> str:
    return str(e)


def parse_element(text: str) -> Element:
    """Inverse of :func:`format_element`: ``60``, ``3,4`` or ``3,4|1``."""
    free, _, tors = text.strip().partition("|")
    try:
        return Element(
            tuple(int(x) for x in free.split(",")),
            tuple(int(x) for x in tors.split(",")) if tors else (),
        )
    except ValueError:
        raise ValueError(f"bad element {text!r}") from None


def format_value(column: str, value) -> str:
    if value is None:
        return ""
    if column in SET_COLUMNS:
        return "{" + ";".join(map(str, value)) + "}"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return str(value)


def parse_value(column: str, text: str):
    if text == "":
        return None
    if column in SET_COLUMNS:
        if not (text.startswith("{") and text.endswith("}")):
            raise ValueError(f"set value must look like {{a;b}}: {text!r}")
        body = text[1:-1]
        return tuple(int(x) for x in body.split(";")) if body else ()
    if column == "omega_exact":
        if text not in ("true", "false"):
            raise ValueError(f"expected true/false, got {text!r}")
        return text == "true"
    if "/" in text:
        return Fraction(text)
    return int(text)


def _columns_ok(columns: list[str]) -> bool:
    allowed = list(INVARIANTS) + ["omega_exact"]
    return all(c in allowed for c in columns) and len(set(columns)) == len(columns)


def dumps_csv(table: ScanTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["element", *table.columns])
    for rec in table:
        writer.writerow(
            [format_element(rec.element)] + [format_value(c, getattr(rec, c)) for c in table.columns]
        )
    return buf.getvalue()


def dumps_jsonl(table: ScanTable) -> str:
    lines = []
    for rec in table:
        row = {"element": format_element(rec.element)}
        for c in table.columns:
            v = getattr(rec, c)
            row[c] = list(v) if c in SET_COLUMNS and v is not None else v
        lines.append(json.dumps(row, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)


def write_scan(path: str | Path, table: ScanTable, fmt: str = "csv") -> None:
    text = dumps_csv(table) if fmt == "csv" else dumps_jsonl(table)
    if fmt == "jsonl" and not table.records:
        # keep the column list recoverable for empty tables
        text = json.dumps({"columns": list(table.columns)}) + "\n"
    Path(path).write_text(text, encoding="utf-8", newline="\n")


def loads_csv(text: str) -> ScanTable:
    reader = csv.reader(io.StringIO(text))
    try:
        header = next(reader)
    except StopIteration:
        raise ScanFormatError("empty file", 1) from None
    if not header or header[0] != "element" or not _columns_ok(header[1:]):
        raise ScanFormatError(f"bad header {header!r}", 1)
    columns = tuple(header[1:])
    table = ScanTable(columns)
    prev = None
    for lineno, row in enumerate(reader, start=2):
        if len(row) != len(header):
            raise ScanFormatError(f"expected {len(header)} fields, got {len(row)}", lineno)
        try:
            rec = ScanRecord(parse_element(row[0]))
            for c, text in zip(columns, row[1:]):
                setattr(rec, c, parse_value(c, text))
        except ValueError as exc:
            raise ScanFormatError(str(exc), lineno) from None
        if prev is not None and not rec.element > prev:
            raise ScanFormatError("element rows must be strictly increasing", lineno)
        prev = rec.element
        table.records.append(rec)
    return table


def loads_jsonl(text: str) -> ScanTable:
    table: ScanTable | None = None
    prev = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        try:
            row = json.loads(line)
        except json.JSONDecodeError as exc:
            raise ScanFormatError(f"invalid JSON: {exc.msg}", lineno) from None
        if "columns" in row and table is None:
            table = ScanTable(tuple(row["columns"]))
            continue
        cols = [k for k in row if k != "element"]
        if table is None:
            if not _columns_ok(cols):
                raise ScanFormatError(f"unknown columns {cols}", lineno)
            table = ScanTable(tuple(cols))
        elif tuple(cols) != table.columns:
            raise ScanFormatError("column set differs from the first row", lineno)
        try:
            rec = ScanRecord(parse_element(str(row["element"])))
        except (KeyError, ValueError) as exc:
            raise ScanFormatError(f"bad element: {exc}", lineno) from None
        for c in cols:
            v = row[c]
            setattr(rec, c, tuple(v) if c in SET_COLUMNS and v is not None else v)
        if prev is not None and not rec.element > prev:
            raise ScanFormatError("element rows must be strictly increasing", lineno)
        prev = rec.element
        table.records.append(rec)
    if table is None:
        raise ScanFormatError("empty file", 1)
    return table


def read_scan(path: str | Path) -> ScanTable:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".jsonl" or text.lstrip().startswith("{"):
        return loads_jsonl(text)
    return loads_csv(text)
