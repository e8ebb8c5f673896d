"""Deterministic report envelopes, their JSON schema, and CSV tables.

Every command's output is one envelope:

    {"schema_version": "1", "command": ..., "config": {...},
     "result": {...}}

or, on failure, the same with an ``error`` record instead of
``result``. Serialization is canonical (sorted keys, two-space
indent, trailing newline, ASCII only), so identical config + seed
reproduces byte-identical files. Reports carry no timestamps or host
information. Non-finite floats are encoded as the strings "inf",
"-inf", "nan" since JSON has no spelling for them.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Optional, Sequence

import jsonschema

from coverlab.errors import error_kind

SCHEMA_VERSION = "1"

COMMANDS = (
    "generate",
    "color",
    "whiten",
    "census",
    "core",
    "bounds",
    "montecarlo",
    "model-compare",
    "ballsbins-check",
)

REPORT_SCHEMA: dict = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "coverlab report envelope",
    "type": "object",
    "required": ["schema_version", "command", "config"],
    "properties": {
        "schema_version": {"const": SCHEMA_VERSION},
        "command": {"enum": list(COMMANDS)},
        "config": {"type": "object"},
        "result": {"type": "object"},
        "error": {
            "type": "object",
            "required": ["kind", "message"],
            "properties": {
                "kind": {"enum": ["domain", "resource", "bracket", "internal"]},
                "message": {"type": "string"},
                "detail": {},
            },
            "additionalProperties": False,
        },
    },
    "oneOf": [{"required": ["result"]}, {"required": ["error"]}],
    "additionalProperties": False,
}


def sanitize(value: Any) -> Any:
    """Recursively make a payload JSON-encodable.

    Floats stay floats unless non-finite (encoded as strings);
    tuples/sets become sorted-where-sensible lists; Fractions are not
    handled here (encode them explicitly at the call site).
    """
    if isinstance(value, float):
        if math.isfinite(value):
            return value
        return repr(value)  # 'inf', '-inf', 'nan'
    if isinstance(value, dict):
        return {str(k): sanitize(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [sanitize(v) for v in value]
    if isinstance(value, (frozenset, set)):
        return [sanitize(v) for v in sorted(value)]
    return value


def envelope(command: str, config: dict, result: dict) -> dict:
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": sanitize(config),
        "result": sanitize(result),
    }
    validate_report(report)
    return report


def error_envelope(command: str, config: dict, exc: BaseException) -> dict:
    detail = getattr(exc, "partial", None)
    if detail is None:
        detail = getattr(exc, "scan", None)
    record: dict = {"kind": error_kind(exc), "message": str(exc)}
    if detail is not None:
        record["detail"] = sanitize(detail)
    report = {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "config": sanitize(config),
        "error": record,
    }
    validate_report(report)
    return report


def validate_report(report: dict) -> None:
    """Raise jsonschema.ValidationError when the envelope is malformed."""
    jsonschema.validate(report, REPORT_SCHEMA)


def canonical_json(report: dict) -> str:
    """The one true serialization: sorted keys, indent 2, ASCII,
    newline-terminated, NaN/Infinity forbidden (sanitize first)."""
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True, allow_nan=False) + "\n"


def bounds_csv(rows: Sequence, header: Optional[Sequence[str]] = None) -> str:
    """CSV for the bounds table with the fixed column set."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header if header is not None else list(rows[0].COLUMNS))
    for row in rows:
        writer.writerow(row.csv_cells())
    return buf.getvalue()
