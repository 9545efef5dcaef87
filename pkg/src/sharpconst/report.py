"""Verification records and their json / csv / text serialisations.

A record compares a numerically computed quantity against its closed form
(status OK / FAIL against the run tolerance) or carries a standalone value
(status INFO).  The json and csv outputs are schema-stable and bit-identical
across runs: floats are fixed at 10 significant digits and record order is
the suite construction order.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

__all__ = ["ReportRecord", "comparison_record", "format_records", "FORMATS"]

FORMATS = ("text", "json", "csv")

_CSV_HEADER = "suite,quantity,parameters,closed_form,numerical,discrepancy,method,status"


@dataclass
class ReportRecord:
    quantity: str
    parameters: dict = field(default_factory=dict)
    closed_form: Optional[float] = None
    numerical: Optional[float] = None
    discrepancy: Optional[float] = None
    method: str = ""
    status: str = "INFO"
    suite: str = ""


def comparison_record(
    quantity: str,
    parameters: dict,
    closed_form: Optional[float],
    numerical: Optional[float],
    method: str,
    tol: float,
) -> ReportRecord:
    """Record with relative discrepancy when both values are present;
    FAIL exactly when the discrepancy exceeds ``tol``.  Against a zero
    reference the discrepancy degenerates to the absolute difference."""
    if closed_form is None or numerical is None:
        return ReportRecord(quantity, parameters, closed_form, numerical, None, method, "INFO")
    if closed_form == 0.0:
        disc = abs(numerical)
    else:
        disc = abs(numerical - closed_form) / abs(closed_form)
    status = "OK" if disc <= tol else "FAIL"
    return ReportRecord(quantity, parameters, closed_form, numerical, disc, method, status)


def _f(x) -> Optional[float]:
    # fixed 10-significant-digit float for reproducible serialisation
    if x is None:
        return None
    if isinstance(x, float):
        return float(f"{x:.10g}")
    return x


def _params_fixed(params: dict) -> dict:
    return {k: _f(v) for k, v in params.items()}


def _json_line(rec: ReportRecord) -> str:
    return json.dumps(
        {
            "suite": rec.suite,
            "quantity": rec.quantity,
            "parameters": _params_fixed(rec.parameters),
            "closed_form": _f(rec.closed_form),
            "numerical": _f(rec.numerical),
            "discrepancy": _f(rec.discrepancy),
            "method": rec.method,
            "status": rec.status,
        },
        sort_keys=True,
    )


def _csv_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return f"{x:.10g}"
    text = str(x)
    if any(c in text for c in ",\"\n"):
        text = '"' + text.replace('"', '""') + '"'
    return text


def _csv_line(rec: ReportRecord) -> str:
    params = ";".join(f"{k}={_csv_cell(v)}" for k, v in rec.parameters.items())
    cells = [
        rec.suite,
        rec.quantity,
        params,
        rec.closed_form,
        rec.numerical,
        rec.discrepancy,
        rec.method,
        rec.status,
    ]
    return ",".join(_csv_cell(c) for c in cells)


def _text_line(rec: ReportRecord) -> str:
    params = " ".join(f"{k}={_csv_cell(v)}" for k, v in rec.parameters.items())
    parts = [f"[{rec.status:4s}]", rec.quantity]
    if params:
        parts.append(f"({params})")
    if rec.closed_form is not None:
        parts.append(f"closed={rec.closed_form:.10g}")
    if rec.numerical is not None:
        parts.append(f"numerical={rec.numerical:.10g}")
    if rec.discrepancy is not None:
        parts.append(f"disc={rec.discrepancy:.3g}")
    if rec.method:
        parts.append(f"[{rec.method}]")
    return " ".join(parts)


def format_records(records: list[ReportRecord], fmt: str) -> str:
    """Serialise records; json is one object per line, csv has a fixed
    header, text is human-oriented (no compatibility guarantee)."""
    if fmt == "json":
        return "\n".join(_json_line(r) for r in records)
    if fmt == "csv":
        return "\n".join([_CSV_HEADER] + [_csv_line(r) for r in records])
    if fmt == "text":
        return "\n".join(_text_line(r) for r in records)
    raise ValueError(f"unknown format {fmt!r} (choose from {FORMATS})")
