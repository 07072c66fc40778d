"""Command-line client.

Usage: fincat WORKSPACE.fincat COMMAND [ARGS...] [--format human|json]

The CLI is a thin client of the HTTP service: with FINCAT_URL set it
talks to a running instance, otherwise it mounts the app in-process.
Exit status: 0 all checks pass, 1 a check failed, 2 input error, 3 cap
exceeded.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="fincat",
        description="verification engine for nullhomotopy structures on finite categories",
    )
    p.add_argument("workspace", help="path to a .fincat workspace file")
    p.add_argument("command", nargs=argparse.REMAINDER, help="command and its arguments")
    p.add_argument(
        "--format",
        choices=("human", "json"),
        default="human",
        help="report format (default: human)",
    )
    return p


def _call_service(workspace_text: str, command: list[str], fmt: str) -> tuple[str, int]:
    url = os.environ.get("FINCAT_URL")
    payload = {"workspace": workspace_text, "command": command, "format": fmt}
    if url:
        import httpx

        resp = httpx.post(url.rstrip("/") + "/run", json=payload, timeout=600.0)
    else:
        import warnings

        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            from fastapi.testclient import TestClient

        from .api import app

        with TestClient(app) as client:
            resp = client.post("/run", json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail")
        if isinstance(detail, list):
            lines = [
                f"line {e['line']}: {e['message']} ({e['hint']})" for e in detail
            ]
        else:
            lines = [str(detail)]
        return "\n".join(lines) + "\n", 2
    resp.raise_for_status()
    body = resp.json()
    return body["rendered"], body["status"]


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    command = [a for a in args.command if a != "--"]
    # argparse REMAINDER swallows trailing options; pull --format back out
    fmt = args.format
    if "--format" in command:
        i = command.index("--format")
        if i + 1 >= len(command) or command[i + 1] not in ("human", "json"):
            print("--format needs human or json", file=sys.stderr)
            return 2
        fmt = command[i + 1]
        command = command[:i] + command[i + 2 :]
    path = Path(args.workspace)
    if not path.exists():
        print(f"no such workspace file: {path}", file=sys.stderr)
        return 2
    rendered, status = _call_service(path.read_text(), command, fmt)
    out = sys.stdout if status in (0, 1) else sys.stderr
    out.write(rendered)
    return status


if __name__ == "__main__":
    sys.exit(main())
