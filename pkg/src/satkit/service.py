"""Stateless HTTP JSON API for the interactive sudoku game.

All puzzle state lives client-side; every handler re-derives what it needs
from the request body, so requests are independent and the service scales
by just running more of it.  Request bodies are strict: unknown fields are
rejected by the schema layer.

Endpoints (bodies documented in the README):
  POST /api/sudoku/new    {seed?}             -> {puzzle, seed, bounds}
  POST /api/sudoku/check  {puzzle, progress}  -> {status, conflicts}
  POST /api/sudoku/hint   {puzzle, progress}  -> {cell, digit, correction}
  POST /api/sudoku/solve  {puzzle}            -> {solution}
  GET  /healthz

The built web UI, when present, is served from `/`.
"""

from __future__ import annotations

import os
import time
from pathlib import Path

from fastapi import FastAPI, HTTPException, Response
from fastapi.responses import HTMLResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel, ConfigDict

from . import sudoku

_PLACEHOLDER = """<!doctype html>
<html><head><title>satkit sudoku</title></head>
<body><h1>satkit sudoku service</h1>
<p>The web UI bundle is not built. The JSON API lives under /api/sudoku/.</p>
</body></html>
"""


class NewRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    seed: int | None = None


class PuzzleResponse(BaseModel):
    puzzle: str
    seed: int
    bounds: tuple[int, int]


class CheckRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    puzzle: str
    progress: str


class CheckResponse(BaseModel):
    status: str  # "solved" | "consistent" | "conflict"
    conflicts: list[tuple[int, int]]


class HintRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    puzzle: str
    progress: str


class HintResponse(BaseModel):
    cell: tuple[int, int]
    digit: int
    correction: bool


class SolveRequest(BaseModel):
    model_config = ConfigDict(extra="forbid")
    puzzle: str


class SolveResponse(BaseModel):
    solution: str


def _parse_grid(text: str) -> sudoku.Grid:
    try:
        return sudoku.Grid.from_text(text)
    except sudoku.GridError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def _parse_progress(text: str) -> sudoku.Cells:
    try:
        return sudoku.parse_cells(text)
    except sudoku.GridError as exc:
        raise HTTPException(status_code=400, detail=str(exc)) from None


def create_app(ui_dir: str | os.PathLike | None = None) -> FastAPI:
    app = FastAPI(title="satkit sudoku service")

    @app.get("/healthz")
    def healthz() -> dict:
        return {"status": "ok"}

    @app.post("/api/sudoku/new", response_model=PuzzleResponse)
    def new_puzzle(req: NewRequest) -> PuzzleResponse:
        seed = req.seed if req.seed is not None else int(1000 * time.time())
        try:
            result = sudoku.generate(seed)
        except RuntimeError as exc:
            raise HTTPException(status_code=500, detail=str(exc)) from None
        bounds = sudoku.estimate_min_clues(result)
        return PuzzleResponse(puzzle=result.puzzle.to_text(), seed=seed, bounds=bounds)

    @app.post("/api/sudoku/check", response_model=CheckResponse)
    def check(req: CheckRequest) -> CheckResponse:
        puzzle = _parse_grid(req.puzzle)
        progress = _parse_progress(req.progress)
        if not sudoku.cells_extend(progress, puzzle):
            raise HTTPException(status_code=400, detail="progress does not extend the puzzle")
        conflicts = sudoku.conflict_cells(progress)
        if conflicts:
            status = "conflict"
        elif all(d is not None for d in progress):
            status = "solved"
        else:
            status = "consistent"
        return CheckResponse(status=status, conflicts=conflicts)

    @app.post(
        "/api/sudoku/hint",
        response_model=HintResponse,
        responses={204: {"description": "nothing to hint: the puzzle is solved"}},
    )
    def hint(req: HintRequest):
        puzzle = _parse_grid(req.puzzle)
        progress = _parse_progress(req.progress)
        try:
            h = sudoku.hint(puzzle, progress)
        except sudoku.NotUniqueError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from None
        except (ValueError, sudoku.UnsatisfiablePuzzleError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        if h is None:
            return Response(status_code=204)
        return HintResponse(cell=(h.row, h.col), digit=h.digit, correction=h.correction)

    @app.post("/api/sudoku/solve", response_model=SolveResponse)
    def solve_puzzle(req: SolveRequest) -> SolveResponse:
        puzzle = _parse_grid(req.puzzle)
        solution = sudoku.solve_sudoku(puzzle)
        if solution is None:
            raise HTTPException(status_code=422, detail="puzzle has no completion")
        return SolveResponse(solution=solution.to_text())

    ui = Path(ui_dir) if ui_dir else _default_ui_dir()
    if ui is not None and ui.is_dir():
        app.mount("/", StaticFiles(directory=ui, html=True), name="ui")
    else:

        @app.get("/", response_class=HTMLResponse)
        def index() -> str:
            return _PLACEHOLDER

    return app


def _default_ui_dir() -> Path | None:
    env = os.environ.get("SATKIT_UI_DIR")
    if env:
        return Path(env)
    here = Path(__file__).resolve()
    for base in here.parents:
        candidate = base / "frontend" / "dist"
        if candidate.is_dir():
            return candidate
    return None
