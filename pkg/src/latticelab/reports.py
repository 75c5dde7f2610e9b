"""Verification reports and their JSON / markdown / csv serializations."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Iterable

import jsonschema

__all__ = [
    "VerificationReport",
    "REPORT_SCHEMA",
    "CSV_COLUMNS",
    "to_json",
    "to_markdown",
    "to_csv",
    "report_emit",
    "load_json",
    "write_report_file",
]

# fields that vary between otherwise identical runs
VOLATILE = ("timestamp", "runtime_seconds")


@dataclass
class VerificationReport:
    id: str
    kind: str
    lhs_value: str
    rhs_value: str
    abs_diff: str
    digits_matched: int
    runtime_seconds: float
    precision_used: int
    status_echo: str
    timestamp: str
    passed: bool
    target: int | None = None
    first_mismatch: str | None = None
    anchor: str = ""
    erratum: str | None = None
    error: str | None = None

    def to_dict(self, volatile: bool = True) -> dict:
        d = asdict(self)
        if not volatile:
            for k in VOLATILE:
                d.pop(k)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "VerificationReport":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})


_nullable_str = {"type": ["string", "null"]}

REPORT_SCHEMA = {
    "type": "object",
    "required": ["run", "results"],
    "additionalProperties": False,
    "properties": {
        "run": {
            "type": "object",
            "required": ["timestamp", "config"],
            "properties": {
                "timestamp": {"type": "string"},
                "config": {"type": "object"},
            },
        },
        "results": {
            "type": "array",
            "items": {
                "type": "object",
                "required": [
                    "id", "lhs_value", "rhs_value", "abs_diff", "digits_matched",
                    "runtime_seconds", "precision_used", "status_echo", "timestamp",
                ],
                "properties": {
                    "id": {"type": "string"},
                    "kind": {"enum": ["numeric", "formal_series"]},
                    "lhs_value": {"type": "string"},
                    "rhs_value": {"type": "string"},
                    "abs_diff": {"type": "string"},
                    "digits_matched": {"type": "integer"},
                    "runtime_seconds": {"type": "number", "minimum": 0},
                    "precision_used": {"type": "integer", "minimum": 0},
                    "status_echo": {"enum": ["proven", "conjectural"]},
                    "timestamp": {"type": "string"},
                    "passed": {"type": "boolean"},
                    "target": {"type": ["integer", "null"]},
                    "first_mismatch": _nullable_str,
                    "anchor": {"type": "string"},
                    "erratum": _nullable_str,
                    "error": _nullable_str,
                },
            },
        },
    },
}

CSV_COLUMNS = ("id", "status", "digits_matched", "abs_diff", "runtime")


def _payload(reports, config, timestamp, volatile):
    run = {"timestamp": timestamp if volatile else "", "config": dict(config or {})}
    return {"run": run, "results": [r.to_dict(volatile) if volatile else _stable(r) for r in reports]}


def _stable(r: VerificationReport) -> dict:
    d = r.to_dict()
    d["timestamp"] = ""
    d["runtime_seconds"] = 0.0
    return d


def to_json(reports: Iterable[VerificationReport], config=None, timestamp: str = "", volatile: bool = True) -> str:
    """Schema-checked JSON; ``volatile=False`` blanks timestamps and runtimes."""
    doc = _payload(list(reports), config, timestamp, volatile)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_json(text: str) -> tuple[dict, list[VerificationReport]]:
    doc = json.loads(text)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return doc["run"], [VerificationReport.from_dict(d) for d in doc["results"]]


def _md_cell(s) -> str:
    return str(s if s is not None else "").replace("|", "\\|").replace("\n", " ")


def to_markdown(reports: Iterable[VerificationReport]) -> str:
    rows = [
        "| id | status | anchor | digits matched | abs diff | passed |",
        "|---|---|---|---|---|---|",
    ]
    for r in reports:
        mark = "yes" if r.passed else ("error" if r.error else "no")
        rows.append(
            f"| {_md_cell(r.id)} | {r.status_echo} | {_md_cell(r.anchor)} | {r.digits_matched} | "
            f"{_md_cell(r.abs_diff)} | {mark} |"
        )
    return "\n".join(rows) + "\n"


def to_csv(reports: Iterable[VerificationReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.id, r.status_echo, r.digits_matched, r.abs_diff, f"{r.runtime_seconds:.3f}"])
    return buf.getvalue()


def report_emit(reports, format: str, dest, config=None, timestamp: str = "") -> None:
    reports = list(reports)
    if format == "json":
        text = to_json(reports, config, timestamp)
    elif format in ("md", "markdown"):
        text = to_markdown(reports)
    elif format == "csv":
        text = to_csv(reports)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if dest in (None, "-"):
        import sys

        sys.stdout.write(text)
        return
    Path(dest).parent.mkdir(parents=True, exist_ok=True)
    Path(dest).write_text(text)


def write_report_file(report: VerificationReport, path) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
