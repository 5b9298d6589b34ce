"""Versioned, byte-deterministic report documents.

Every CLI run produces one JSON document: a schema tag, the full run
configuration (for provenance and reproduction), and the result. All
rational values are rendered as "p/q" strings, never floats; keys are
sorted and no timestamps are embedded, so identical configurations
produce identical bytes. CSV output is a flat key/value projection of
the same document, except for results that carry a natural table (scan
rows, growth tables, cutting-plane rounds), which become proper CSV
tables behind '#'-prefixed config comment lines.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
from enum import Enum
from fractions import Fraction
from typing import Any, Optional

SCHEMA = "lpgaps-report/1"


def to_jsonable(value: Any) -> Any:
    """Recursively convert package values to JSON-safe structures."""
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return value
    if isinstance(value, Enum):
        return value.value
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: to_jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, frozenset):
        return sorted(to_jsonable(v) for v in value)
    raise TypeError(f"no report encoding for {type(value)!r}")


def report_document(subcommand: str, config: Any, result: Any) -> dict:
    return {
        "schema": SCHEMA,
        "subcommand": subcommand,
        "config": to_jsonable(config),
        "result": to_jsonable(result),
    }


def render_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def flatten(value: Any, prefix: str = "") -> list[tuple[str, str]]:
    """Dotted-key flat projection of a JSON-able structure."""
    items: list[tuple[str, str]] = []
    if isinstance(value, dict):
        for key in sorted(value):
            sub = f"{prefix}.{key}" if prefix else str(key)
            items.extend(flatten(value[key], sub))
    elif isinstance(value, list):
        for idx, entry in enumerate(value):
            sub = f"{prefix}.{idx}" if prefix else str(idx)
            items.extend(flatten(entry, sub))
    else:
        rendered = "" if value is None else str(value)
        if value is True:
            rendered = "true"
        elif value is False:
            rendered = "false"
        items.append((prefix, rendered))
    return items


def _csv_cell(value: Any) -> str:
    if value is None:
        return ""
    if value is True:
        return "true"
    if value is False:
        return "false"
    if isinstance(value, list):
        return " ".join(_csv_cell(v) for v in value)
    return str(value)


def render_csv(
    doc: dict, table: Optional[tuple[list[str], list[list[Any]]]] = None
) -> str:
    """Flat key/value CSV, or a proper table (with the config flattened
    into leading comment lines) when the result is naturally tabular."""
    out = io.StringIO()
    if table is None:
        writer = csv.writer(out)
        writer.writerow(["key", "value"])
        for key, rendered in flatten(doc):
            writer.writerow([key, rendered])
        return out.getvalue()
    out.write(f"# schema={doc['schema']}\n")
    out.write(f"# subcommand={doc['subcommand']}\n")
    for key, rendered in flatten(doc["config"], "config"):
        out.write(f"# {key}={rendered}\n")
    header, rows = table
    writer = csv.writer(out)
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(cell) for cell in row])
    return out.getvalue()
