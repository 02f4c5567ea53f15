"""Glue for the five-step ingestion pipeline, shared by CLI and HTTP API:
split/parse the document, validate it against the knowledge base, resolve
context, normalize, and index.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .config import ArtifactConfig, KnowledgeBaseConfig
from .document import CcsvDocument, Diagnostic, parse_ccsv, validate_against_kb
from .index import MeasurementIndex
from .kb import KnowledgeBase
from .loader import LoadReport, load, write_normalized_csv


class ValidationFailed(Exception):
    """The document parsed but error-severity diagnostics were found."""

    def __init__(self, diagnostics: list[Diagnostic]):
        errors = [d for d in diagnostics if d.severity == "error"]
        super().__init__("; ".join(d.message for d in errors) or "validation failed")
        self.diagnostics = diagnostics


def build_knowledge_base(cfg: ArtifactConfig, name: str | None = None) -> KnowledgeBase:
    """Instantiate and populate a configured knowledge base (first one by
    default). An empty file list means the bundled schema/ontology/network.
    """
    entry: KnowledgeBaseConfig | None = None
    if name is None:
        entry = cfg.knowledge_bases[0]
    else:
        for candidate in cfg.knowledge_bases:
            if candidate.name == name:
                entry = candidate
                break
    if entry is None:
        raise KeyError(f"no knowledge base named {name!r} configured")
    kb = KnowledgeBase(entry.name, base=cfg.base_iri)
    if entry.files:
        kb.load_files(entry.files)
    else:
        kb.load_bundled()
    return kb


def select_kb_name(cfg: ArtifactConfig, doc: CcsvDocument) -> str:
    """Match the preamble's knowledge-base reference against configured
    names (by the local part of its IRI); fall back to the first one.
    """
    local = doc.model.kb_ref.value
    if local.startswith(cfg.base_iri.value):
        local = local[len(cfg.base_iri.value):]
    for entry in cfg.knowledge_bases:
        if entry.name == local:
            return entry.name
    return cfg.knowledge_bases[0].name


def validate_document(source: str, name: str, cfg: ArtifactConfig,
                      kb: KnowledgeBase | None = None):
    """Parse + kb-validate; returns (doc, kb, diagnostics)."""
    doc = parse_ccsv(source, name, base=cfg.base_iri)
    if kb is None:
        kb = build_knowledge_base(cfg, select_kb_name(cfg, doc))
    return doc, kb, validate_against_kb(doc, kb)


def ingest(source: str, name: str, cfg: ArtifactConfig, index: MeasurementIndex,
           kb: KnowledgeBase | None = None,
           normalized_csv_path: str | None = None) -> LoadReport:
    """Full pipeline for one document; raises ValidationFailed on
    error-severity diagnostics, propagates format errors.
    """
    doc, kb, diagnostics = validate_document(source, name, cfg, kb)
    if any(d.severity == "error" for d in diagnostics):
        raise ValidationFailed(diagnostics)
    records, normalized, report = load(doc, kb)
    if normalized_csv_path:
        write_normalized_csv(normalized, normalized_csv_path)
        report.normalized_csv_path = normalized_csv_path
    index.index_records(records)
    return report


def normalized_path_for(source_path: str) -> str:
    root, _ = os.path.splitext(source_path)
    return root + ".normalized.csv"
