"""The CCSV loader: join a parsed document with its knowledge-base context,
emit one measurement record per (row x measurement type), and produce the
normalized CSV table with metadata columns appended.
"""

from __future__ import annotations

import csv
import hashlib
import time
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal

from .document import CcsvDocument, CsvTable
from .kb import DeploymentContext, KnowledgeBase, MissingPlatform
from .rdf import Iri

METADATA_COLUMNS = (
    "_instrument",
    "_instrument_label",
    "_platform",
    "_platform_label",
    "_lat",
    "_long",
    "_characteristic",
    "_unit",
    "_data_collection",
)
ENTITY_COLUMN = "_entity"


@dataclass(frozen=True)
class MeasurementRecord:
    record_id: str
    value: str
    timestamp: datetime
    entity: Iri | None
    characteristic: Iri
    unit: Iri
    instrument: Iri
    instrument_label: str
    platform: Iri | None
    platform_label: str
    latitude: Decimal | None
    longitude: Decimal | None
    data_collection: Iri
    dataset: Iri
    source: str


@dataclass
class SkippedRow:
    row: int
    measurement_type: str
    reason: str


@dataclass
class LoadReport:
    records_emitted: int = 0
    rows_skipped: list[SkippedRow] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    normalized_csv_path: str | None = None
    duration_seconds: float = 0.0


def record_id_for(dataset: Iri, measurement_type: Iri, row_index: int) -> str:
    """Deterministic identity: re-loading the same document row overwrites
    rather than duplicates.
    """
    digest = hashlib.sha256(
        f"{dataset.value}\x00{measurement_type.value}\x00{row_index}".encode()
    )
    return digest.hexdigest()[:24]


def load(
    doc: CcsvDocument, kb: KnowledgeBase
) -> tuple[list[MeasurementRecord], CsvTable, LoadReport]:
    """Resolve the document's deployment and turn body rows into records.

    An unknown deployment aborts the load; a deployment without a platform
    link degrades (location fields empty) with a warning; rows whose
    timestamp cell does not parse, or whose value cell is empty, are
    skipped and counted.
    """
    from .timeutil import parse_instant

    started = time.perf_counter()
    report = LoadReport()

    try:
        ctx = kb.resolve_deployment(doc.model.deployment)
    except MissingPlatform:
        ctx = kb.resolve_deployment(doc.model.deployment, allow_missing_platform=True)
        report.warnings.append(
            f"deployment {doc.model.deployment} has no platform; "
            "location metadata left empty"
        )

    ts_by_id = {ts.id: ts for ts in doc.model.timestamps}
    records: list[MeasurementRecord] = []
    for mt in doc.model.measurement_types:
        ts_col = ts_by_id[mt.timestamp_ref].column
        entity = kb.entity_for_characteristic(mt.characteristic)
        for i, row in enumerate(doc.body.rows):
            value = row[mt.column]
            if value.strip() == "":
                report.rows_skipped.append(SkippedRow(i, mt.id.value, "empty value cell"))
                continue
            try:
                ts = parse_instant(row[ts_col])
            except ValueError:
                report.rows_skipped.append(
                    SkippedRow(i, mt.id.value, f"unparseable timestamp {row[ts_col]!r}")
                )
                continue
            records.append(
                MeasurementRecord(
                    record_id=record_id_for(doc.model.dataset, mt.id, i),
                    value=value,
                    timestamp=ts,
                    entity=entity,
                    characteristic=mt.characteristic,
                    unit=mt.standard,
                    instrument=ctx.instrument,
                    instrument_label=ctx.instrument_label,
                    platform=ctx.platform,
                    platform_label=ctx.platform_label,
                    latitude=ctx.latitude,
                    longitude=ctx.longitude,
                    data_collection=doc.model.data_collection,
                    dataset=doc.model.dataset,
                    source=doc.source_name,
                )
            )

    report.records_emitted = len(records)
    normalized = normalize(doc, ctx, kb)
    report.duration_seconds = time.perf_counter() - started
    return records, normalized, report


def normalize(
    doc: CcsvDocument, ctx: DeploymentContext, kb: KnowledgeBase | None = None
) -> CsvTable:
    """Append the fixed metadata columns to every body row.

    Original cells are untouched; with several measurement types the shared
    characteristic/unit cells carry a semicolon-joined list in declaration
    order. The entity column appears only when the ontology associates an
    entity with at least one characteristic.
    """
    mts = doc.model.measurement_types
    characteristics = ";".join(mt.characteristic.value for mt in mts)
    units = ";".join(mt.standard.value for mt in mts)
    entities = []
    if kb is not None:
        for mt in mts:
            entity = kb.entity_for_characteristic(mt.characteristic)
            entities.append(entity.value if entity else "")
    entity_cell = ";".join(entities) if any(entities) else None

    meta = [
        ctx.instrument.value,
        ctx.instrument_label,
        ctx.platform.value if ctx.platform else "",
        ctx.platform_label,
        str(ctx.latitude) if ctx.latitude is not None else "",
        str(ctx.longitude) if ctx.longitude is not None else "",
        characteristics,
        units,
        doc.model.data_collection.value,
    ]
    header = list(doc.body.header) + list(METADATA_COLUMNS)
    if entity_cell is not None:
        header.append(ENTITY_COLUMN)
        meta.append(entity_cell)
    rows = tuple(tuple(row) + tuple(meta) for row in doc.body.rows)
    return CsvTable(header=tuple(header), rows=rows)


def write_normalized_csv(table: CsvTable, path: str) -> None:
    """RFC 4180, UTF-8, LF line endings."""
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(table.header)
        writer.writerows(table.rows)
