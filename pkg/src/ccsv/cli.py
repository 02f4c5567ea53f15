"""Command-line surface: ccsv validate | load | query | serve."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .config import ConfigError, load_config
from .document import CcsvFormatError
from .index import (
    FacetedQuery,
    MeasurementIndex,
    QueryError,
    SnapshotError,
    record_to_fields,
    resolve_filter_value,
)
from .pipeline import (
    ValidationFailed,
    build_knowledge_base,
    ingest,
    normalized_path_for,
    validate_document,
)
from .rdf import TurtleParseError
from .timeutil import parse_instant

EXIT_OK = 0
EXIT_FORMAT = 1
EXIT_VALIDATION = 2
EXIT_CONFIG = 3


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ccsv", description="Contextualized-CSV ingestion and faceted search"
    )
    parser.add_argument("--config", help="TOML configuration file")
    parser.add_argument(
        "--format", choices=("table", "json"), default="table", dest="fmt"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a CCSV file and check it against the kb")
    p.add_argument("file")

    p = sub.add_parser("load", help="run the full pipeline on CCSV files")
    p.add_argument("files", nargs="+")

    p = sub.add_parser("query", help="search the measurement index")
    p.add_argument("--filter", action="append", default=[], metavar="FIELD=VALUE")
    p.add_argument("--facet", action="append", default=[], metavar="FIELD")
    p.add_argument("--from", dest="time_from", metavar="ISO8601")
    p.add_argument("--to", dest="time_to", metavar="ISO8601")
    p.add_argument("--offset", type=int, default=0)
    p.add_argument("--limit", type=int, default=50)
    p.add_argument("--sort", default="timestamp")
    p.add_argument("--dir", dest="sort_dir", choices=("asc", "desc"), default="asc")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--host")
    p.add_argument("--port", type=int)

    return parser


def _open_index(cfg) -> MeasurementIndex:
    index = MeasurementIndex()
    if os.path.exists(cfg.snapshot_path):
        index.restore(cfg.snapshot_path)
    return index


def cmd_validate(args, cfg) -> int:
    try:
        with open(args.file, encoding="utf-8") as fh:
            source = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    name = os.path.splitext(os.path.basename(args.file))[0]
    try:
        _, _, diagnostics = validate_document(source, name, cfg)
    except (CcsvFormatError, TurtleParseError) as exc:
        if args.fmt == "json":
            print(json.dumps({"ok": False, "error": str(exc)}))
        else:
            print(f"error: {exc}")
        return EXIT_FORMAT

    has_errors = any(d.severity == "error" for d in diagnostics)
    if args.fmt == "json":
        print(
            json.dumps(
                {
                    "ok": not has_errors,
                    "diagnostics": [
                        {
                            "severity": d.severity,
                            "subject": d.subject.value if d.subject else None,
                            "message": d.message,
                        }
                        for d in diagnostics
                    ],
                }
            )
        )
    else:
        for d in diagnostics:
            subject = f" {d.subject}" if d.subject else ""
            print(f"{d.severity}:{subject} {d.message}")
        if not diagnostics:
            print("ok")
    return EXIT_VALIDATION if has_errors else EXIT_OK


def cmd_load(args, cfg) -> int:
    index = _open_index(cfg)
    kb_cache = {}
    failures = 0
    outputs = []
    for path in args.files:
        name = os.path.splitext(os.path.basename(path))[0]
        try:
            with open(path, encoding="utf-8") as fh:
                source = fh.read()
            report = ingest(
                source,
                name,
                cfg,
                index,
                normalized_csv_path=normalized_path_for(path),
            )
            outputs.append(
                {
                    "file": path,
                    "ok": True,
                    "records": report.records_emitted,
                    "skipped": len(report.rows_skipped),
                    "normalized_csv": report.normalized_csv_path,
                    "warnings": report.warnings,
                    "duration_seconds": round(report.duration_seconds, 4),
                }
            )
        except (OSError, CcsvFormatError, TurtleParseError, ValidationFailed) as exc:
            failures += 1
            outputs.append({"file": path, "ok": False, "error": str(exc)})
    index.snapshot(cfg.snapshot_path)

    if args.fmt == "json":
        print(json.dumps({"reports": outputs, "indexed_total": len(index)}))
    else:
        for rep in outputs:
            if rep["ok"]:
                print(
                    f"{rep['file']}: {rep['records']} records "
                    f"({rep['skipped']} skipped) -> {rep['normalized_csv']}"
                )
                for w in rep["warnings"]:
                    print(f"  warning: {w}")
            else:
                print(f"{rep['file']}: FAILED: {rep['error']}")
    return min(failures, 125)


def build_query(args, cfg) -> FacetedQuery:
    filters = []
    for item in args.filter:
        if "=" not in item:
            raise QueryError(f"filter must be FIELD=VALUE: {item!r}")
        fld, _, value = item.partition("=")
        filters.append((fld, resolve_filter_value(fld, value, cfg.base_iri)))
    time_range = None
    if args.time_from or args.time_to:
        time_range = (
            parse_instant(args.time_from) if args.time_from else None,
            parse_instant(args.time_to) if args.time_to else None,
        )
    return FacetedQuery(
        filters=tuple(filters),
        time_range=time_range,
        facet_fields=tuple(args.facet),
        offset=args.offset,
        limit=args.limit,
        sort_field=args.sort,
        sort_dir=args.sort_dir,
    )


def cmd_query(args, cfg) -> int:
    try:
        index = _open_index(cfg)
        result = index.search(build_query(args, cfg))
    except (QueryError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except SnapshotError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if args.fmt == "json":
        print(
            json.dumps(
                {
                    "total": result.total,
                    "records": [record_to_fields(r) for r in result.records],
                    "facets": {
                        f: [{"value": v, "count": c} for v, c in vals]
                        for f, vals in result.facets.items()
                    },
                }
            )
        )
    else:
        print(f"total: {result.total}")
        for fld, values in result.facets.items():
            print(f"facet {fld}:")
            for value, count in values:
                print(f"  {value or '(empty)'}: {count}")
        for r in result.records:
            fields = record_to_fields(r)
            print(
                "\t".join(
                    (
                        fields["timestamp"],
                        fields["value"],
                        fields["characteristic"],
                        fields["unit"],
                        fields["instrument_label"] or fields["instrument"],
                    )
                )
            )
    return EXIT_OK


def cmd_serve(args, cfg) -> int:
    import uvicorn

    from .server import create_app

    host = args.host or cfg.host
    port = args.port if args.port is not None else cfg.port
    app = create_app(cfg)
    uvicorn.run(app, host=host, port=port, log_level="info")
    return EXIT_OK


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    handler = {
        "validate": cmd_validate,
        "load": cmd_load,
        "query": cmd_query,
        "serve": cmd_serve,
    }[args.command]
    return handler(args, cfg)


if __name__ == "__main__":
    sys.exit(main())
