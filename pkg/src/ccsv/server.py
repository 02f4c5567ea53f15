"""HTTP JSON API over the measurement index and knowledge base."""

from __future__ import annotations

import os
import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, Query, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .config import ArtifactConfig
from .document import CcsvFormatError
from .index import (
    FacetedQuery,
    MeasurementIndex,
    QueryError,
    record_to_fields,
    resolve_filter_value,
)
from .kb import KnowledgeBaseError, UnknownDeployment
from .pipeline import ValidationFailed, build_knowledge_base, ingest
from .rdf import TurtleParseError
from .timeutil import format_instant, parse_instant

CCSV_CONTENT_TYPE = "text/vnd.ccsv"

# closed set of API error codes
CODE_BAD_REQUEST = "bad_request"
CODE_UNKNOWN_FIELD = "unknown_field"
CODE_NOT_FOUND = "not_found"
CODE_FORMAT_ERROR = "format_error"
CODE_VALIDATION_ERROR = "validation_error"
CODE_INTERNAL = "internal"


def _error(status: int, code: str, message: str, subject: str | None = None):
    return JSONResponse(
        status_code=status,
        content={"code": code, "message": message, "subject": subject},
    )


def create_app(cfg: ArtifactConfig) -> FastAPI:
    index = MeasurementIndex()
    kb = build_knowledge_base(cfg)
    ingest_lock = threading.Lock()

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        # a corrupt snapshot refuses startup rather than serving bad data
        if os.path.exists(cfg.snapshot_path):
            index.restore(cfg.snapshot_path)
        yield
        index.snapshot(cfg.snapshot_path)

    app = FastAPI(title="ccsv measurement search", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cfg.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )
    app.state.index = index
    app.state.kb = kb

    @app.exception_handler(QueryError)
    async def _query_error(request: Request, exc: QueryError):
        code = CODE_UNKNOWN_FIELD if "field" in str(exc) else CODE_BAD_REQUEST
        return _error(400, code, str(exc))

    @app.get("/api/health")
    def health():
        return {"status": "ok", "records": len(index)}

    @app.get("/api/search")
    def search(
        filter: list[str] = Query(default=[]),  # noqa: A002 - API parameter name
        facet: list[str] = Query(default=[]),
        from_: str | None = Query(default=None, alias="from"),
        to: str | None = Query(default=None),
        offset: int = 0,
        limit: int | None = None,
        sort: str = "timestamp",
        dir: str = "asc",  # noqa: A002
    ):
        filters = []
        for item in filter:
            fld, sep, value = item.partition(":")
            if not sep:
                return _error(
                    400, CODE_BAD_REQUEST, f"filter must be field:value, got {item!r}"
                )
            filters.append((fld, resolve_filter_value(fld, value, cfg.base_iri)))
        time_range = None
        if from_ or to:
            try:
                time_range = (
                    parse_instant(from_) if from_ else None,
                    parse_instant(to) if to else None,
                )
            except ValueError as exc:
                return _error(400, CODE_BAD_REQUEST, str(exc))
        query = FacetedQuery(
            filters=tuple(filters),
            time_range=time_range,
            facet_fields=tuple(facet),
            offset=offset,
            limit=min(limit or cfg.default_limit, cfg.max_limit),
            sort_field=sort,
            sort_dir=dir,
        )
        result = index.search(query)
        return {
            "total": result.total,
            "records": [record_to_fields(r) for r in result.records],
            "facets": {
                f: [{"value": v, "count": c} for v, c in vals]
                for f, vals in result.facets.items()
            },
            "facetable": index.facetable_fields(),
            "offset": query.offset,
            "limit": query.limit,
        }

    @app.get("/api/kb/instruments")
    def kb_instruments():
        from . import vocab

        return {
            "instruments": [
                {"iri": iri.value, "label": label}
                for iri, label in kb.list_instances(vocab.VSTOI_INSTRUMENT, transitive=True)
            ]
        }

    @app.get("/api/kb/deployments/{deployment_id:path}")
    def kb_deployment(deployment_id: str):
        iri = cfg.base_iri.resolve(deployment_id)
        try:
            ctx = kb.resolve_deployment(iri, allow_missing_platform=True)
        except UnknownDeployment as exc:
            return _error(404, CODE_NOT_FOUND, str(exc), subject=iri.value)
        except KnowledgeBaseError as exc:
            return _error(422, CODE_VALIDATION_ERROR, str(exc), subject=iri.value)
        return {
            "deployment": ctx.deployment.value,
            "instrument": ctx.instrument.value,
            "instrument_label": ctx.instrument_label,
            "platform": ctx.platform.value if ctx.platform else None,
            "platform_label": ctx.platform_label,
            "platform_class": ctx.platform_class.value if ctx.platform_class else None,
            "latitude": str(ctx.latitude) if ctx.latitude is not None else None,
            "longitude": str(ctx.longitude) if ctx.longitude is not None else None,
            "started_at": format_instant(ctx.started_at) if ctx.started_at else None,
        }

    @app.post("/api/datasets", status_code=202)
    async def post_dataset(request: Request, response: Response, name: str = "upload"):
        body = await request.body()
        try:
            source = body.decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, CODE_FORMAT_ERROR, "body is not valid UTF-8")
        try:
            with ingest_lock:
                report = ingest(source, name, cfg, index, kb=kb)
                index.snapshot(cfg.snapshot_path)
        except (CcsvFormatError, TurtleParseError) as exc:
            return _error(400, CODE_FORMAT_ERROR, str(exc))
        except ValidationFailed as exc:
            return _error(
                422,
                CODE_VALIDATION_ERROR,
                str(exc),
                subject=next(
                    (d.subject.value for d in exc.diagnostics
                     if d.severity == "error" and d.subject),
                    None,
                ),
            )
        return {
            "records": report.records_emitted,
            "skipped": len(report.rows_skipped),
            "warnings": report.warnings,
            "duration_seconds": report.duration_seconds,
        }

    return app
