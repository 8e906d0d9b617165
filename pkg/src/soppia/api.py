"""HTTP service exposing the assessment pipeline.

All endpoints wrap their payloads in one envelope::

    {"ok": true,  "data": {...}}
    {"ok": false, "error": {"code": "...", "message": "...", "field": "..."}}

with exactly one of ``data``/``error`` present. Compute endpoints are
stateless: the same request body yields the same response bytes.
Persistence happens only through the explicit ``/api/cases`` endpoints.
Responses are canonical JSON, so clients can compare them byte-for-byte
with the CLI's machine-readable output.
"""

from __future__ import annotations

import json
import logging
import threading
from dataclasses import dataclass

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from starlette.exceptions import HTTPException as StarletteHTTPException

from .canonical import canonical_json
from .errors import (
    AuthError,
    BindError,
    NetworkError,
    NotFound,
    ParseError,
    SoppiaError,
)
from .numeric import dec
from .pipeline import assess_case, result_to_dict
from .prompting import (
    CompletionEndpoint,
    complete_via_model,
    parse_response,
    parsed_response_to_dict,
    prompt_to_dict,
    render_prompt,
)
from .schema import (
    CriteriaSchema,
    default_clt_schema,
    load_schema_file,
    schema_from_dict,
    schema_to_dict,
    validate_schema,
)
from .scoring import case_from_dict, score_case
from .sensitivity import (
    WhatIfDelta,
    marginal_contributions,
    marginal_rows_to_dicts,
    what_if,
)
from .store import CaseStore, summary_to_dict

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ServiceConfig:
    port: int = 8000
    host: str = "127.0.0.1"
    store_root: str = "./soppia_store"
    schema_path: str | None = None
    llm_endpoint: CompletionEndpoint | None = None


def _json_response(payload: dict, status_code: int = 200) -> Response:
    return Response(
        content=canonical_json(payload),
        status_code=status_code,
        media_type="application/json",
    )


def _ok(data: object) -> Response:
    return _json_response({"ok": True, "data": data})


def _error(code: str, message: str, field: str | None, status_code: int) -> Response:
    error: dict = {"code": code, "message": message}
    if field is not None:
        error["field"] = field
    return _json_response({"ok": False, "error": error}, status_code=status_code)


_STATUS_BY_CODE = {
    "not_found": 404,
    "network": 502,
    "auth": 502,
    "storage": 500,
    "bind": 500,
    "internal": 500,
}


async def _body(request: Request) -> dict:
    try:
        document = json.loads(await request.body())
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"request body is not valid JSON: {exc}") from exc
    if not isinstance(document, dict):
        raise ParseError("request body must be a JSON object")
    return document


def _case_from(document: dict):
    raw = document.get("case")
    if not isinstance(raw, dict):
        raise ParseError("body must carry a case object", field="case")
    return case_from_dict(raw)


def _delta_from(document: dict) -> WhatIfDelta:
    raw = document.get("delta", {})
    if raw is None:
        raw = {}
    if not isinstance(raw, dict):
        raise ParseError("delta must be an object", field="delta")
    presences = raw.get("presence_overrides", {})
    weights_raw = raw.get("weight_overrides", {})
    if not isinstance(presences, dict):
        raise ParseError("presence_overrides must be an object", field="delta.presence_overrides")
    if not isinstance(weights_raw, dict):
        raise ParseError("weight_overrides must be an object", field="delta.weight_overrides")
    weights = {
        criterion_id: dec(value, field=f"delta.weight_overrides.{criterion_id}")
        for criterion_id, value in weights_raw.items()
    }
    return WhatIfDelta(presence_overrides=presences, weight_overrides=weights)


def create_app(config: ServiceConfig | None = None) -> FastAPI:
    config = config or ServiceConfig()
    if config.schema_path:
        active_schema = load_schema_file(config.schema_path)
    else:
        active_schema = default_clt_schema()
    store = CaseStore(config.store_root)

    app = FastAPI(title="Soppia assessment service", docs_url=None, redoc_url=None)
    app.state.schema_lock = threading.Lock()
    app.state.active_schema = active_schema
    app.state.store = store
    app.state.config = config

    def current_schema() -> CriteriaSchema:
        with app.state.schema_lock:
            return app.state.active_schema

    @app.exception_handler(SoppiaError)
    async def _soppia_error(request: Request, exc: SoppiaError) -> Response:
        status = _STATUS_BY_CODE.get(exc.code, 422)
        return _error(exc.code, exc.message, exc.field, status)

    @app.exception_handler(TimeoutError)
    async def _timeout_error(request: Request, exc: TimeoutError) -> Response:
        return _error("timeout", str(exc), None, 502)

    @app.exception_handler(StarletteHTTPException)
    async def _http_error(request: Request, exc: StarletteHTTPException) -> Response:
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _error(code, str(exc.detail), None, exc.status_code)

    @app.exception_handler(RequestValidationError)
    async def _request_error(request: Request, exc: RequestValidationError) -> Response:
        return _error("validation", str(exc), None, 422)

    @app.exception_handler(Exception)
    async def _unexpected(request: Request, exc: Exception) -> Response:
        logger.exception("unhandled error on %s", request.url.path)
        return _error("internal", "internal error", None, 500)

    @app.get("/api/schema")
    async def get_schema() -> Response:
        return _ok(schema_to_dict(current_schema()))

    @app.put("/api/schema")
    async def put_schema(request: Request) -> Response:
        document = await _body(request)
        schema = schema_from_dict(document)
        violations = validate_schema(schema)
        if violations:
            first = violations[0]
            return _error("schema", first.message, first.field, 422)
        with app.state.schema_lock:
            app.state.active_schema = schema
        return _ok(schema_to_dict(schema))

    @app.post("/api/assess")
    async def post_assess(request: Request) -> Response:
        case = _case_from(await _body(request))
        result = assess_case(current_schema(), case)
        return _ok(result_to_dict(result, include_report=True, include_renderings=True))

    @app.post("/api/whatif")
    async def post_whatif(request: Request) -> Response:
        document = await _body(request)
        case = _case_from(document)
        delta = _delta_from(document)
        outcome = what_if(current_schema(), case, delta)
        return _ok(
            {
                "before": result_to_dict(outcome.before, include_report=False),
                "after": result_to_dict(outcome.after, include_report=False),
                "changed_fields": list(outcome.changed_fields),
            }
        )

    @app.post("/api/sensitivity")
    async def post_sensitivity(request: Request) -> Response:
        case = _case_from(await _body(request))
        schema = current_schema()
        rows = marginal_contributions(schema, case)
        breakdown = score_case(schema, case)
        return _ok(
            {
                "weighted_total": str(breakdown.weighted_total),
                "rows": marginal_rows_to_dicts(rows),
            }
        )

    @app.post("/api/prompt/render")
    async def post_prompt_render(request: Request) -> Response:
        document = await _body(request)
        facts = document.get("facts")
        if not isinstance(facts, str):
            raise ParseError("body must carry facts as a string", field="facts")
        return _ok(prompt_to_dict(render_prompt(current_schema(), facts)))

    @app.post("/api/prompt/parse")
    async def post_prompt_parse(request: Request) -> Response:
        document = await _body(request)
        text = document.get("text")
        if not isinstance(text, str):
            raise ParseError("body must carry text as a string", field="text")
        return _ok(parsed_response_to_dict(parse_response(text, current_schema())))

    if config.llm_endpoint is not None:
        endpoint = config.llm_endpoint

        @app.post("/api/prompt/complete")
        async def post_prompt_complete(request: Request) -> Response:
            document = await _body(request)
            facts = document.get("facts")
            if not isinstance(facts, str):
                raise ParseError("body must carry facts as a string", field="facts")
            prompt = render_prompt(current_schema(), facts)
            return _ok({"response_text": complete_via_model(prompt, endpoint)})

    @app.get("/api/cases")
    async def get_cases() -> Response:
        summaries = store.list(kind="case")
        return _ok({"cases": [summary_to_dict(s) for s in summaries]})

    @app.post("/api/cases")
    async def post_cases(request: Request) -> Response:
        document = await _body(request)
        raw = document.get("case")
        if not isinstance(raw, dict):
            raise ParseError("body must carry a case object", field="case")
        record = store.save("case", raw)
        return _ok({"record_id": record.record_id, "revision": record.revision})

    @app.get("/api/cases/{record_id}")
    async def get_case(record_id: str, revision: int | None = None) -> Response:
        record = store.load(record_id, revision)
        if record.kind != "case":
            raise NotFound(f"no case record {record_id!r}")
        return _ok(
            {
                "record_id": record.record_id,
                "revision": record.revision,
                "saved_at": record.saved_at,
                "case": record.payload,
            }
        )

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service under uvicorn; raises BindError if the port is taken."""
    import uvicorn

    app = create_app(config)
    try:
        uvicorn.run(app, host=config.host, port=config.port, log_level="info")
    except OSError as exc:
        raise BindError(f"cannot bind {config.host}:{config.port}: {exc}") from exc
