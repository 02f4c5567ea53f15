"""The CCSV file format: a Turtle preamble, a `---` delimiter line, and an
RFC 4180 CSV body. This module splits documents, parses the body, and lifts
the preamble graph into a validated typed model.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from datetime import datetime

from . import vocab
from .kb import KnowledgeBase
from .rdf import Graph, Iri, Literal, match, parse_turtle
from .timeutil import parse_instant

DELIMITER = "---"


class CcsvFormatError(ValueError):
    """Base for all CCSV document format errors."""


class MissingDelimiter(CcsvFormatError):
    def __init__(self):
        super().__init__(
            f"document has no preamble/body delimiter line ({DELIMITER!r})"
        )


class CsvShapeError(CcsvFormatError):
    pass


class PreambleIncomplete(CcsvFormatError):
    """A required preamble node or link is missing."""

    def __init__(self, missing: str):
        super().__init__(f"preamble is missing {missing}")
        self.missing = missing


class DuplicateNode(CcsvFormatError):
    def __init__(self, kind: str, nodes):
        names = ", ".join(str(n) for n in nodes)
        super().__init__(f"preamble declares more than one {kind}: {names}")
        self.kind = kind


class ColumnOutOfRange(CcsvFormatError):
    def __init__(self, node, column: int, ncols: int):
        super().__init__(
            f"{node} declares atColumn {column} but the body has {ncols} columns"
        )
        self.column = column


@dataclass(frozen=True)
class CsvTable:
    header: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        trimmed = [h.strip() for h in self.header]
        if len(set(trimmed)) != len(trimmed):
            raise CsvShapeError(f"duplicate column names in header: {self.header}")
        for i, row in enumerate(self.rows):
            if len(row) != len(self.header):
                raise CsvShapeError(
                    f"row {i + 1} has {len(row)} cells, header has {len(self.header)}"
                )


@dataclass(frozen=True)
class TimestampSpec:
    id: Iri
    column: int


@dataclass(frozen=True)
class MeasurementTypeSpec:
    id: Iri
    column: int
    characteristic: Iri
    standard: Iri
    timestamp_ref: Iri


@dataclass(frozen=True)
class PreambleModel:
    kb_ref: Iri
    kb_connection_url: str
    deployment: Iri
    deployment_started_at: datetime
    data_collection: Iri
    data_collection_started_at: datetime
    dataset: Iri
    measurement_types: tuple[MeasurementTypeSpec, ...]
    timestamps: tuple[TimestampSpec, ...]


@dataclass(frozen=True)
class CcsvDocument:
    preamble_graph: Graph
    model: PreambleModel
    body: CsvTable
    source_name: str


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    subject: Iri | None
    message: str


def split_document(source: str) -> tuple[str, str]:
    """Split on the first line that is exactly `---` (trailing whitespace
    allowed). The delimiter line belongs to neither part; preamble + the
    delimiter line + body reconstructs the source.
    """
    lines = source.splitlines(keepends=True)
    for i, line in enumerate(lines):
        if line.rstrip("\r\n").rstrip() == DELIMITER and line.rstrip("\r\n").startswith(DELIMITER):
            return "".join(lines[:i]), "".join(lines[i + 1:])
    raise MissingDelimiter()


def parse_csv_body(body_text: str) -> CsvTable:
    reader = csv.reader(io.StringIO(body_text, newline=""))
    rows = [tuple(r) for r in reader if r]
    if not rows:
        raise CsvShapeError("CSV body has no header row")
    return CsvTable(header=rows[0], rows=tuple(rows[1:]))


def _nodes_of_type(graph: Graph, cls: Iri) -> list:
    return sorted(
        {t.subject for t in match(graph, None, vocab.RDF_TYPE, cls)},
        key=lambda n: getattr(n, "value", getattr(n, "label", "")),
    )


def _require_one(graph: Graph, cls: Iri, kind: str):
    nodes = _nodes_of_type(graph, cls)
    if not nodes:
        raise PreambleIncomplete(kind)
    if len(nodes) > 1:
        raise DuplicateNode(kind, nodes)
    return nodes[0]


def _object_of(graph: Graph, subject, predicate):
    hits = match(graph, subject, predicate, None)
    return hits[0].object if hits else None


def _instant_of(graph: Graph, subject, what: str) -> datetime:
    obj = _object_of(graph, subject, vocab.PROV_STARTED_AT_TIME)
    if not isinstance(obj, Literal):
        raise PreambleIncomplete(f"prov:startedAtTime on {what}")
    try:
        return parse_instant(obj.lexical)
    except ValueError as exc:
        raise CcsvFormatError(f"bad prov:startedAtTime on {what}: {exc}") from None


def _int_of(graph: Graph, subject, predicate, what: str) -> int:
    obj = _object_of(graph, subject, predicate)
    if not isinstance(obj, Literal):
        raise PreambleIncomplete(f"{what}")
    try:
        return int(obj.lexical)
    except ValueError:
        raise CcsvFormatError(f"{what} is not an integer: {obj.lexical!r}") from None


def parse_preamble(graph: Graph, ncols: int) -> PreambleModel:
    kb_node = _require_one(graph, vocab.CCSV_KNOWLEDGE_BASE, "ccsv:KnowledgeBase")
    deployment = _require_one(graph, vocab.VSTOI_DEPLOYMENT, "vstoi:Deployment")
    collection = _require_one(graph, vocab.HASNETO_DATA_COLLECTION, "hasneto:DataCollection")
    dataset = _require_one(graph, vocab.VSTOI_DATASET, "vstoi:Dataset")

    url_obj = _object_of(graph, kb_node, vocab.CCSV_HAS_CONNECTION_URL)
    kb_url = url_obj.lexical if isinstance(url_obj, Literal) else ""

    linked = _object_of(graph, deployment, vocab.HASNETO_HAS_DATA_COLLECTION)
    if linked != collection:
        raise PreambleIncomplete(
            "hasneto:hasDataCollection link from the deployment to the data collection"
        )
    generated_by = _object_of(graph, dataset, vocab.PROV_WAS_GENERATED_BY)
    if generated_by != collection:
        raise PreambleIncomplete(
            "prov:wasGeneratedBy link from the dataset to the data collection"
        )

    dep_start = _instant_of(graph, deployment, "the deployment")
    coll_start = _instant_of(graph, collection, "the data collection")
    if coll_start < dep_start:
        raise CcsvFormatError(
            "data collection starts before its deployment "
            f"({coll_start.isoformat()} < {dep_start.isoformat()})"
        )

    # timestamp specs: time:Instant nodes with a column that are not
    # themselves measurements (measurements are typed time:Instant too)
    measurement_nodes = set(_nodes_of_type(graph, vocab.OBOE_MEASUREMENT))
    timestamps = []
    for node in _nodes_of_type(graph, vocab.TIME_INSTANT):
        if node in measurement_nodes or not isinstance(node, Iri):
            continue
        col = _int_of(graph, node, vocab.CCSV_AT_COLUMN, f"ccsv:atColumn on {node}")
        if not 0 <= col < ncols:
            raise ColumnOutOfRange(node, col, ncols)
        timestamps.append(TimestampSpec(id=node, column=col))
    by_id = {ts.id: ts for ts in timestamps}

    mt_refs = [
        t.object
        for t in match(graph, dataset, vocab.HASNETO_HAS_MEASUREMENT_TYPE, None)
        if isinstance(t.object, Iri)
    ]
    if not mt_refs:
        raise PreambleIncomplete("hasneto:hasMeasurementType (at least one measurement)")

    specs = []
    for mt in mt_refs:
        if mt not in measurement_nodes:
            raise PreambleIncomplete(f"oboe:Measurement typing on {mt}")
        col = _int_of(graph, mt, vocab.CCSV_AT_COLUMN, f"ccsv:atColumn on {mt}")
        if not 0 <= col < ncols:
            raise ColumnOutOfRange(mt, col, ncols)
        characteristic = _object_of(graph, mt, vocab.OBOE_OF_CHARACTERISTIC)
        if not isinstance(characteristic, Iri):
            raise PreambleIncomplete(f"oboe:ofCharacteristic on {mt}")
        standard = _object_of(graph, mt, vocab.OBOE_USES_STANDARD)
        if not isinstance(standard, Iri):
            raise PreambleIncomplete(f"oboe:usesStandard on {mt}")
        ts_ref = _object_of(graph, mt, vocab.TIME_IN_DATETIME)
        if not isinstance(ts_ref, Iri) or ts_ref not in by_id:
            raise PreambleIncomplete(f"time:inDateTime on {mt} naming a declared time:Instant")
        if col == by_id[ts_ref].column:
            raise CcsvFormatError(
                f"{mt} reads column {col}, which is also its timestamp column"
            )
        specs.append(
            MeasurementTypeSpec(
                id=mt,
                column=col,
                characteristic=characteristic,
                standard=standard,
                timestamp_ref=ts_ref,
            )
        )

    if not isinstance(kb_node, Iri) or not isinstance(deployment, Iri) \
            or not isinstance(collection, Iri) or not isinstance(dataset, Iri):
        raise CcsvFormatError("preamble core nodes must be IRIs, not blank nodes")

    return PreambleModel(
        kb_ref=kb_node,
        kb_connection_url=kb_url,
        deployment=deployment,
        deployment_started_at=dep_start,
        data_collection=collection,
        data_collection_started_at=coll_start,
        dataset=dataset,
        measurement_types=tuple(specs),
        timestamps=tuple(timestamps),
    )


def parse_ccsv(
    source: str, name: str, base: Iri = vocab.DEFAULT_DATA_BASE
) -> CcsvDocument:
    """Parse and validate a whole CCSV document.

    Relative IRIs in the preamble resolve against ``base`` — shared with
    the knowledge base so deployment references line up.
    """
    preamble_text, body_text = split_document(source)
    body = parse_csv_body(body_text)
    graph = parse_turtle(preamble_text, base)
    model = parse_preamble(graph, ncols=len(body.header))
    return CcsvDocument(preamble_graph=graph, model=model, body=body, source_name=name)


def validate_against_kb(doc: CcsvDocument, kb: KnowledgeBase) -> list[Diagnostic]:
    """Check the document's context references against the knowledge base.

    An empty list means: the deployment exists, and every characteristic /
    standard is declared in the domain ontology under the expected root.
    """
    out: list[Diagnostic] = []
    model = doc.model
    if not kb.has_instance(model.deployment, vocab.VSTOI_DEPLOYMENT):
        out.append(
            Diagnostic("error", model.deployment, "deployment not found in knowledge base")
        )
    for mt in model.measurement_types:
        if not kb.is_declared_class(mt.characteristic):
            out.append(
                Diagnostic(
                    "warning",
                    mt.characteristic,
                    "characteristic is not declared in the domain ontology",
                )
            )
        elif not kb.is_subclass_of(mt.characteristic, vocab.OBOE_CHARACTERISTIC):
            out.append(
                Diagnostic(
                    "warning",
                    mt.characteristic,
                    "characteristic does not specialize the characteristic root class",
                )
            )
        if not kb.is_declared_class(mt.standard):
            out.append(
                Diagnostic(
                    "warning",
                    mt.standard,
                    "standard is not declared in the domain ontology",
                )
            )
        elif not kb.is_subclass_of(mt.standard, vocab.OBOE_BASE_UNIT):
            out.append(
                Diagnostic(
                    "warning", mt.standard, "standard does not specialize the unit root class"
                )
            )
    return out
