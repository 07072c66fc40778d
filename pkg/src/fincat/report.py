"""Deterministic check reports.

A report is the command echo plus an ordered list of check records.  The
machine format is a stable versioned schema with no timing content, so
identical input yields byte-identical output; the human format is an
aligned table.  Exit status: 0 all checks pass, 1 a check failed,
2 input error, 3 cap exceeded.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

SCHEMA = "fincat-report/1"

OK_VERDICTS = {"pass", "info", "hypothesis not met"}

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_CAP_EXCEEDED = 3


@dataclass(frozen=True)
class CheckRecord:
    name: str
    verdict: str  # pass | fail | info | hypothesis not met
    witnesses: tuple[str, ...] = ()


@dataclass(frozen=True)
class Report:
    command: tuple[str, ...]
    checks: tuple[CheckRecord, ...]
    status: int
    timing: float = field(default=0.0, compare=False)


def make_report(command, checks, status=None, timing=0.0) -> Report:
    checks = tuple(checks)
    if status is None:
        status = (
            EXIT_OK
            if all(c.verdict in OK_VERDICTS for c in checks)
            else EXIT_CHECK_FAILED
        )
    return Report(tuple(command), checks, status, timing)


def report_to_dict(r: Report) -> dict:
    return {
        "schema": SCHEMA,
        "command": list(r.command),
        "checks": [
            {"name": c.name, "verdict": c.verdict, "witnesses": list(c.witnesses)}
            for c in r.checks
        ],
        "status": r.status,
    }


def report_from_dict(d: dict) -> Report:
    if d.get("schema") != SCHEMA:
        raise ValueError(f"unknown report schema {d.get('schema')!r}")
    return Report(
        tuple(d["command"]),
        tuple(
            CheckRecord(c["name"], c["verdict"], tuple(c["witnesses"]))
            for c in d["checks"]
        ),
        d["status"],
    )


def emit_report(r: Report, format: str = "human") -> str:
    if format == "json":
        return json.dumps(report_to_dict(r), indent=2) + "\n"
    if format != "human":
        raise ValueError(f"unknown report format {format!r}")
    lines = ["command: " + " ".join(r.command)]
    if r.checks:
        name_w = max(len(c.name) for c in r.checks)
        verdict_w = max(len(c.verdict) for c in r.checks)
        for c in r.checks:
            row = f"  {c.name:<{name_w}}  {c.verdict:<{verdict_w}}"
            if c.witnesses:
                row += "  " + "; ".join(c.witnesses)
            lines.append(row.rstrip())
    lines.append(f"status: {r.status} ({len(r.checks)} checks)")
    return "\n".join(lines) + "\n"
