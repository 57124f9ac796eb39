"""HTTP service exposing scenario validation and execution.

The compute surface of the package: clients POST a config (plus optional
seed/thread overrides) and get back the full artifact set as text files.
Config problems map to 422 with a structured detail; simulation failures map
to 500. Run `simulate-server` (or uvicorn directly) to serve it.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import __version__, scenario
from .errors import ParseError, ValidationError

app = FastAPI(title="fieldmode", version=__version__)


class SimulateRequest(BaseModel):
    config_text: str = Field(..., description="Scenario config (key = value lines)")
    seed: int | None = Field(None, description="Override the config's seed")
    threads: int | None = Field(None, description="Override the config's thread count")


class ArtifactModel(BaseModel):
    path: str
    content: str


class SimulateResponse(BaseModel):
    resolved_config: str
    artifacts: list[ArtifactModel]


class ValidateRequest(BaseModel):
    config_text: str


class ValidateResponse(BaseModel):
    resolved_config: str


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str = __version__


def _parse_or_422(config_text: str, seed: int | None = None,
                  threads: int | None = None) -> scenario.ScenarioConfig:
    try:
        cfg = scenario.parse_config(config_text)
        return scenario.with_overrides(cfg, seed=seed, threads=threads)
    except ParseError as exc:
        raise HTTPException(status_code=422,
                            detail={"kind": "parse-error", "message": str(exc)}) from exc
    except ValidationError as exc:
        raise HTTPException(status_code=422,
                            detail={"kind": "validation-error", "message": str(exc)}) from exc


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse()


@app.post("/config/validate", response_model=ValidateResponse)
def validate(request: ValidateRequest) -> ValidateResponse:
    cfg = _parse_or_422(request.config_text)
    return ValidateResponse(resolved_config=scenario.render_config(cfg))


@app.post("/runs", response_model=SimulateResponse)
def runs(request: SimulateRequest) -> SimulateResponse:
    cfg = _parse_or_422(request.config_text, seed=request.seed, threads=request.threads)
    try:
        result = scenario.run(cfg)
    except Exception as exc:
        raise HTTPException(status_code=500,
                            detail={"kind": "runtime-error",
                                    "error": type(exc).__name__,
                                    "message": str(exc)}) from exc
    return SimulateResponse(
        resolved_config=scenario.render_config(cfg),
        artifacts=[ArtifactModel(path=a.path, content=a.content)
                   for a in result.artifacts],
    )


def main() -> None:
    import argparse

    import uvicorn

    parser = argparse.ArgumentParser(prog="simulate-server",
                                     description="Serve the fieldmode simulation API")
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8000)
    args = parser.parse_args()
    uvicorn.run(app, host=args.host, port=args.port)
