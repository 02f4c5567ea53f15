"""Self-contained faceted measurement index: exact-match filtering, time
ranges, paging, per-facet value counts, and checksummed snapshot files.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal

from .loader import MeasurementRecord
from .rdf import Iri
from .timeutil import format_instant, parse_instant

SNAPSHOT_VERSION = 1


class IndexError_(Exception):
    """Base for index errors (named to avoid shadowing the builtin)."""


class SchemaMismatch(IndexError_):
    pass


class QueryError(IndexError_):
    pass


class SnapshotError(IndexError_):
    pass


@dataclass(frozen=True)
class FieldSchema:
    name: str
    kind: str  # keyword | instant | decimal | text
    facetable: bool = False
    stored: bool = True

    def __post_init__(self):
        if self.facetable and self.kind != "keyword":
            raise ValueError(f"facetable field {self.name} must be keyword-kind")


DEFAULT_SCHEMA: tuple[FieldSchema, ...] = (
    FieldSchema("record_id", "keyword"),
    FieldSchema("value", "text"),
    FieldSchema("timestamp", "instant"),
    FieldSchema("entity", "keyword"),
    FieldSchema("characteristic", "keyword", facetable=True),
    FieldSchema("unit", "keyword", facetable=True),
    FieldSchema("instrument", "keyword", facetable=True),
    FieldSchema("instrument_label", "keyword"),
    FieldSchema("platform", "keyword", facetable=True),
    FieldSchema("platform_label", "keyword"),
    FieldSchema("latitude", "decimal"),
    FieldSchema("longitude", "decimal"),
    FieldSchema("data_collection", "keyword", facetable=True),
    FieldSchema("dataset", "keyword"),
    FieldSchema("source", "keyword"),
)

MAX_LIMIT = 1000
DEFAULT_LIMIT = 50

# fields whose stored values are IRIs; filter values given as local names
# or prefixed names are expanded before matching
IRI_VALUED_FIELDS = frozenset(
    {"entity", "characteristic", "unit", "instrument", "platform",
     "data_collection", "dataset"}
)


def resolve_filter_value(field_name: str, value: str, base: Iri) -> str:
    """Expand a CLI/API filter value to the absolute IRI the index stores.

    Absolute IRIs pass through; known prefixed names expand via the default
    prefixes; anything else resolves against the data base IRI.
    """
    from .rdf import DEFAULT_PREFIXES, _SCHEME_RE

    if field_name not in IRI_VALUED_FIELDS or not value:
        return value
    prefix, sep, local = value.partition(":")
    if sep and prefix in DEFAULT_PREFIXES:
        return DEFAULT_PREFIXES[prefix] + local
    if _SCHEME_RE.match(value):
        return value
    return base.resolve(value).value


@dataclass(frozen=True)
class FacetedQuery:
    filters: tuple[tuple[str, str], ...] = ()
    time_range: tuple[datetime | None, datetime | None] | None = None  # [start, end)
    facet_fields: tuple[str, ...] = ()
    offset: int = 0
    limit: int = DEFAULT_LIMIT
    sort_field: str = "timestamp"
    sort_dir: str = "asc"


@dataclass(frozen=True)
class SearchResult:
    total: int
    records: tuple[MeasurementRecord, ...]
    facets: dict[str, list[tuple[str, int]]]


def record_to_fields(r: MeasurementRecord) -> dict[str, str]:
    """Flatten a record into the per-field string values the index stores."""
    return {
        "record_id": r.record_id,
        "value": r.value,
        "timestamp": format_instant(r.timestamp),
        "entity": r.entity.value if r.entity else "",
        "characteristic": r.characteristic.value,
        "unit": r.unit.value,
        "instrument": r.instrument.value,
        "instrument_label": r.instrument_label,
        "platform": r.platform.value if r.platform else "",
        "platform_label": r.platform_label,
        "latitude": str(r.latitude) if r.latitude is not None else "",
        "longitude": str(r.longitude) if r.longitude is not None else "",
        "data_collection": r.data_collection.value,
        "dataset": r.dataset.value,
        "source": r.source,
    }


def record_from_fields(f: dict[str, str]) -> MeasurementRecord:
    return MeasurementRecord(
        record_id=f["record_id"],
        value=f["value"],
        timestamp=parse_instant(f["timestamp"]),
        entity=Iri(f["entity"]) if f["entity"] else None,
        characteristic=Iri(f["characteristic"]),
        unit=Iri(f["unit"]),
        instrument=Iri(f["instrument"]),
        instrument_label=f["instrument_label"],
        platform=Iri(f["platform"]) if f["platform"] else None,
        platform_label=f["platform_label"],
        latitude=Decimal(f["latitude"]) if f["latitude"] else None,
        longitude=Decimal(f["longitude"]) if f["longitude"] else None,
        data_collection=Iri(f["data_collection"]),
        dataset=Iri(f["dataset"]),
        source=f["source"],
    )


class _State:
    def __init__(self, docs: dict[str, MeasurementRecord], schema_names):
        self.docs = docs
        self.fields: dict[str, dict[str, str]] = {
            rid: record_to_fields(rec) for rid, rec in docs.items()
        }
        self.postings: dict[str, dict[str, set[str]]] = {n: {} for n in schema_names}
        for rid, fvals in self.fields.items():
            for name, value in fvals.items():
                self.postings[name].setdefault(value, set()).add(rid)


class MeasurementIndex:
    """Inverted index over measurement records.

    Writers (index_records, restore) serialize on a lock and swap in a new
    state; readers always see a complete pre- or post-batch state.
    """

    def __init__(self, schema: tuple[FieldSchema, ...] = DEFAULT_SCHEMA):
        self.schema = {f.name: f for f in schema}
        self._write_lock = threading.Lock()
        self._state = _State({}, self.schema)

    def __len__(self) -> int:
        return len(self._state.docs)

    def index_records(self, records) -> int:
        """Index a batch; equal record_ids replace. Returns the batch size
        accepted (additions plus replacements). Rejects the whole batch if
        any record carries a field the schema lacks.
        """
        records = list(records)
        for r in records:
            unknown = set(record_to_fields(r)) - set(self.schema)
            if unknown:
                raise SchemaMismatch(
                    f"record {r.record_id} has fields not in schema: {sorted(unknown)}"
                )
        if not records:
            return 0
        with self._write_lock:
            docs = dict(self._state.docs)
            for r in records:
                docs[r.record_id] = r
            self._state = _State(docs, self.schema)
        return len(records)

    # -- search -------------------------------------------------------------

    def _check_query(self, q: FacetedQuery) -> None:
        if not 1 <= q.limit <= MAX_LIMIT:
            raise QueryError(f"limit must be in [1, {MAX_LIMIT}], got {q.limit}")
        if q.offset < 0:
            raise QueryError("offset must be >= 0")
        for name, _ in q.filters:
            if name not in self.schema:
                raise QueryError(f"unknown field: {name}")
        for name in q.facet_fields:
            if name not in self.schema:
                raise QueryError(f"unknown field: {name}")
            if not self.schema[name].facetable:
                raise QueryError(f"field is not facetable: {name}")
        if q.sort_field not in self.schema:
            raise QueryError(f"unknown sort field: {q.sort_field}")
        if q.sort_dir not in ("asc", "desc"):
            raise QueryError(f"sort direction must be asc or desc: {q.sort_dir}")

    def _sort_key(self, state: _State, rid: str, field_name: str):
        kind = self.schema[field_name].kind
        raw = state.fields[rid][field_name]
        if kind == "decimal":
            return (raw == "", Decimal(raw) if raw else Decimal(0))
        if kind == "instant":
            return (raw == "", state.docs[rid].timestamp if raw else datetime.min)
        return (raw == "", raw)

    def search(self, q: FacetedQuery) -> SearchResult:
        self._check_query(q)
        state = self._state

        candidates: set[str] | None = None
        for name, value in q.filters:
            ids = state.postings.get(name, {}).get(value, set())
            candidates = set(ids) if candidates is None else candidates & ids
            if not candidates:
                break
        if candidates is None:
            candidates = set(state.docs)

        if q.time_range is not None and candidates:
            start, end = q.time_range
            candidates = {
                rid
                for rid in candidates
                if (start is None or state.docs[rid].timestamp >= start)
                and (end is None or state.docs[rid].timestamp < end)
            }

        total = len(candidates)

        facets: dict[str, list[tuple[str, int]]] = {}
        for name in q.facet_fields:
            counts: dict[str, int] = {}
            for rid in candidates:
                value = state.fields[rid][name]
                counts[value] = counts.get(value, 0) + 1
            facets[name] = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))

        ordered = sorted(
            candidates, key=lambda rid: (self._sort_key(state, rid, q.sort_field), rid)
        )
        if q.sort_dir == "desc":
            ordered.reverse()
        page = ordered[q.offset : q.offset + q.limit]
        return SearchResult(
            total=total,
            records=tuple(state.docs[rid] for rid in page),
            facets=facets,
        )

    # -- persistence --------------------------------------------------------

    def snapshot(self, path: str) -> None:
        """Write a versioned, checksummed snapshot of all records."""
        state = self._state
        payload = json.dumps(
            [state.fields[rid] for rid in sorted(state.docs)], sort_keys=True
        ).encode("utf-8")
        header = json.dumps(
            {
                "version": SNAPSHOT_VERSION,
                "sha256": hashlib.sha256(payload).hexdigest(),
                "count": len(state.docs),
            }
        ).encode("utf-8")
        tmp = path + ".tmp"
        with open(tmp, "wb") as fh:
            fh.write(header + b"\n" + payload)
        os.replace(tmp, path)

    def restore(self, path: str) -> int:
        """Replace the index contents from a snapshot file; the index is
        untouched if the file is corrupt or from another version.
        """
        with open(path, "rb") as fh:
            blob = fh.read()
        newline = blob.find(b"\n")
        if newline == -1:
            raise SnapshotError("corrupt snapshot: missing header line")
        try:
            header = json.loads(blob[:newline])
        except json.JSONDecodeError:
            raise SnapshotError("corrupt snapshot: unreadable header") from None
        if header.get("version") != SNAPSHOT_VERSION:
            raise SnapshotError(
                f"snapshot version {header.get('version')} does not match "
                f"{SNAPSHOT_VERSION}"
            )
        payload = blob[newline + 1 :]
        if hashlib.sha256(payload).hexdigest() != header.get("sha256"):
            raise SnapshotError("corrupt snapshot: checksum mismatch")
        try:
            field_dicts = json.loads(payload)
            records = [record_from_fields(f) for f in field_dicts]
        except (json.JSONDecodeError, KeyError, ValueError) as exc:
            raise SnapshotError(f"corrupt snapshot: {exc}") from None
        if len(records) != header.get("count"):
            raise SnapshotError("corrupt snapshot: record count mismatch")
        with self._write_lock:
            self._state = _State({r.record_id: r for r in records}, self.schema)
        return len(records)

    def facetable_fields(self) -> list[str]:
        return [n for n, f in self.schema.items() if f.facetable]
