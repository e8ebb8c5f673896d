"""FastAPI application: one POST endpoint per command.

The CLI talks to this app in-process by default; `coverlab serve`
runs it under uvicorn for remote use. Response bodies are canonical
report JSON, byte-identical to what the CLI writes to files.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse, Response

import coverlab
from coverlab.reports import COMMANDS, REPORT_SCHEMA, SCHEMA_VERSION, canonical_json
from coverlab.service.handlers import run_command
from coverlab.service.models import ExperimentConfig, HealthResponse

STATUS_BY_KIND = {"domain": 400, "resource": 422, "bracket": 422, "internal": 500}


def create_app() -> FastAPI:
    app = FastAPI(title="coverlab", version=coverlab.__version__, docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _invalid_config(request: Request, exc: RequestValidationError) -> JSONResponse:
        detail = [
            {"loc": list(e.get("loc", ())), "msg": e.get("msg"), "type": e.get("type")}
            for e in exc.errors()
        ]
        return JSONResponse(
            status_code=400,
            content={"error": {"kind": "domain", "message": "invalid config", "detail": detail}},
        )

    @app.get("/v1/health")
    def health() -> HealthResponse:
        return HealthResponse(version=coverlab.__version__, schema_version=SCHEMA_VERSION)

    @app.get("/v1/schema")
    def schema() -> JSONResponse:
        return JSONResponse(REPORT_SCHEMA)

    @app.post("/v1/{command}")
    def run_experiment(command: str, cfg: ExperimentConfig) -> Response:
        if command not in COMMANDS:
            return JSONResponse(
                status_code=404,
                content={
                    "error": {
                        "kind": "domain",
                        "message": f"unknown command {command!r}",
                        "detail": sorted(COMMANDS),
                    }
                },
            )
        report = run_command(command, cfg)
        status = 200 if "result" in report else STATUS_BY_KIND[report["error"]["kind"]]
        return Response(
            content=canonical_json(report), media_type="application/json", status_code=status
        )

    return app


app = create_app()
