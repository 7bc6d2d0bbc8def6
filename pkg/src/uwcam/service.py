"""Stateless HTTP layer exposing the engine to the companion UI.

Request and response bodies are the same documents the CLI reads and
writes. The catalog is loaded once at startup and shared read-only; every
handler is a pure function of its request body.
"""
from __future__ import annotations

import argparse
import json

from fastapi import FastAPI, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .engine import SweepAxis, SweepSpec, evaluate, report_document, sweep, sweep_document
from .errors import Diagnostic, InfeasibleError, StageError, ValidationError
from .presets import Catalog, SpectralProfile, load_default_catalog, validate_profile
from .scenario import SCHEMA_VERSION, scenario_from_document, scenario_schema

SCHEMA_HEADER = "X-UWCam-Schema"
SWEEP_CELL_CAP = 100_000
DEFAULT_CORS_ORIGINS = ("http://localhost:5173", "http://127.0.0.1:5173")


def _diagnostics_body(diags: list[Diagnostic]) -> dict:
    return {"schema_version": SCHEMA_VERSION,
            "diagnostics": [d.as_dict() for d in diags]}


def _error_body(code: str, message: str) -> dict:
    return _diagnostics_body([Diagnostic("error", code, message)])


async def _read_json(request: Request):
    raw = await request.body()
    try:
        return json.loads(raw) if raw else None, None
    except json.JSONDecodeError as exc:
        return None, JSONResponse(_error_body("malformed-body", f"body is not valid JSON: {exc}"),
                                  status_code=400)


def create_app(catalog: Catalog | None = None,
               cors_origins: tuple[str, ...] = DEFAULT_CORS_ORIGINS) -> FastAPI:
    catalog = catalog or load_default_catalog()
    app = FastAPI(title="uwcam", docs_url=None, redoc_url=None)
    app.add_middleware(CORSMiddleware, allow_origins=list(cors_origins),
                       allow_methods=["*"], allow_headers=["*"])

    @app.middleware("http")
    async def add_schema_header(request: Request, call_next):
        response: Response = await call_next(request)
        response.headers[SCHEMA_HEADER] = str(SCHEMA_VERSION)
        return response

    @app.get("/api/presets")
    def presets() -> JSONResponse:
        listing = []
        for (kind, name) in sorted(catalog.entries):
            entry = catalog.entries[(kind, name)]
            item = {"kind": kind, "name": name}
            provenance = getattr(entry.payload, "provenance", None)
            if provenance:
                item["provenance"] = provenance
            if isinstance(entry.payload, SpectralProfile) and entry.payload.preset_kind:
                item["preset_kind"] = entry.payload.preset_kind
            listing.append(item)
        return JSONResponse({"schema_version": SCHEMA_VERSION, "presets": listing})

    @app.get("/api/schema")
    def schema() -> JSONResponse:
        return JSONResponse(scenario_schema(catalog))

    @app.post("/api/evaluate")
    async def api_evaluate(request: Request):
        doc, err = await _read_json(request)
        if err:
            return err
        if not isinstance(doc, dict):
            return JSONResponse(_error_body("malformed-body", "expected a scenario document"),
                                status_code=400)
        try:
            scenario = scenario_from_document(doc, catalog)
            report = evaluate(scenario)
        except ValidationError as exc:
            return JSONResponse(_diagnostics_body(exc.diagnostics), status_code=422)
        except (InfeasibleError, StageError) as exc:
            return JSONResponse(_error_body("evaluation-failed", str(exc)), status_code=422)
        return JSONResponse(report_document(report, include_stage_spectra=True))

    @app.post("/api/sweep")
    async def api_sweep(request: Request):
        body, err = await _read_json(request)
        if err:
            return err
        if not isinstance(body, dict) or "scenario" not in body or "sweep" not in body:
            return JSONResponse(_error_body("malformed-body",
                                            "expected {scenario: ..., sweep: ...}"),
                                status_code=400)
        try:
            axes = tuple(SweepAxis(path=str(a["path"]), start=float(a["start"]),
                                   stop=float(a["stop"]), step=float(a["step"]))
                         for a in body["sweep"]["params"])
            metrics = tuple(str(m) for m in body["sweep"]["metrics"])
            spec = SweepSpec(axes=axes, metrics=metrics)
        except (KeyError, TypeError, ValueError) as exc:
            return JSONResponse(_error_body("malformed-body", f"bad sweep spec: {exc}"),
                                status_code=400)
        if spec.cell_count() > SWEEP_CELL_CAP:
            return JSONResponse(
                _error_body("sweep-too-large",
                            f"{spec.cell_count()} cells exceed the {SWEEP_CELL_CAP} cap"),
                status_code=413)
        try:
            scenario_from_document(body["scenario"], catalog)
            result = sweep(body["scenario"], spec, catalog)
        except ValidationError as exc:
            return JSONResponse(_diagnostics_body(exc.diagnostics), status_code=422)
        except KeyError as exc:
            return JSONResponse(_error_body("unknown-parameter",
                                            f"sweep path {exc} does not resolve"),
                                status_code=422)
        return JSONResponse(sweep_document(result))

    @app.post("/api/validate")
    async def api_validate(request: Request):
        body, err = await _read_json(request)
        if err:
            return err
        if not isinstance(body, dict) or "kind" not in body:
            return JSONResponse(_error_body("malformed-body",
                                            "expected {kind: ..., content|document: ...}"),
                                status_code=400)
        kind = body["kind"]
        if kind == "scenario":
            if "document" not in body:
                return JSONResponse(_error_body("malformed-body",
                                                "scenario validation needs 'document'"),
                                    status_code=400)
            try:
                scenario_from_document(body["document"], catalog)
                return JSONResponse(_diagnostics_body([]))
            except ValidationError as exc:
                return JSONResponse(_diagnostics_body(exc.diagnostics))
        if "content" not in body:
            return JSONResponse(_error_body("malformed-body",
                                            "profile validation needs 'content'"),
                                status_code=400)
        _, diags = validate_profile(kind, str(body["content"]),
                                    source=str(body.get("filename", "<upload>")))
        return JSONResponse(_diagnostics_body(diags))

    return app


def main(argv: list[str] | None = None) -> None:
    import uvicorn

    parser = argparse.ArgumentParser(prog="uwcam-service")
    parser.add_argument("--bind", default="127.0.0.1")
    parser.add_argument("--port", type=int, default=8765)
    parser.add_argument("--data-dir", default=None)
    parser.add_argument("--cors-origin", action="append", default=None,
                        help="allowed origin (repeatable); defaults to local dev server")
    args = parser.parse_args(argv)
    app = create_app(load_default_catalog(args.data_dir),
                     tuple(args.cors_origin) if args.cors_origin else DEFAULT_CORS_ORIGINS)
    uvicorn.run(app, host=args.bind, port=args.port)


if __name__ == "__main__":
    main()
