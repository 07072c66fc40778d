"""HTTP service wrapping the verification engine.

Endpoints: GET /health, POST /workspace/parse (summary or 422 with the
full error list), POST /run (parse + dispatch one command, returning the
machine report, the rendered text, and the exit status).  The service is
stateless; the workspace travels with every request.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__
from .commands import run_command
from .dsl import WorkspaceParseError, parse_workspace
from .report import emit_report, report_to_dict

app = FastAPI(title="fincat", version=__version__)


class ParseRequest(BaseModel):
    workspace: str = Field(description="workspace source text")


class ParseResponse(BaseModel):
    categories: dict[str, int]  # name -> arrow count
    structures: list[str]
    ideals: list[str]
    pairs: list[str]
    systems: list[str]
    warnings: list[str]


class RunRequest(BaseModel):
    workspace: str
    command: list[str]
    format: str = "json"


class RunResponse(BaseModel):
    report: dict
    rendered: str
    status: int


def _parse_or_422(text: str):
    try:
        return parse_workspace(text)
    except WorkspaceParseError as exc:
        raise HTTPException(
            status_code=422,
            detail=[
                {"line": e.line, "message": e.message, "hint": e.hint}
                for e in exc.errors
            ],
        )


@app.get("/health")
def health() -> dict:
    return {"status": "ok", "version": __version__}


@app.post("/workspace/parse", response_model=ParseResponse)
def workspace_parse(req: ParseRequest) -> ParseResponse:
    ws = _parse_or_422(req.workspace)
    return ParseResponse(
        categories={n: len(c.arrows) for n, c in ws.categories.items()},
        structures=list(ws.structures),
        ideals=list(ws.ideals),
        pairs=list(ws.pairs),
        systems=list(ws.systems),
        warnings=list(ws.warnings),
    )


@app.post("/run", response_model=RunResponse)
def run(req: RunRequest) -> RunResponse:
    if req.format not in ("human", "json"):
        raise HTTPException(status_code=422, detail=f"unknown format {req.format}")
    ws = _parse_or_422(req.workspace)
    report = run_command(ws, req.command)
    return RunResponse(
        report=report_to_dict(report),
        rendered=emit_report(report, req.format),
        status=report.status,
    )
