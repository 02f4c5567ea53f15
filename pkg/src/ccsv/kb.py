"""Knowledge base: the semantic sensor network plus the domain ontology,
with deployment resolution and subclass reachability queries.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from datetime import datetime
from decimal import Decimal, InvalidOperation
from importlib import resources

from . import vocab
from .rdf import BlankNode, Graph, Iri, Literal, match, parse_turtle
from .timeutil import parse_instant

BUNDLED_FILES = ("hasneto-sc-schema.ttl", "pmf-domain.ttl", "fortaleza-network.ttl")


class KnowledgeBaseError(Exception):
    def __init__(self, message: str, subject: Iri | None = None):
        super().__init__(message)
        self.subject = subject


class UnknownDeployment(KnowledgeBaseError):
    pass


class MissingInstrument(KnowledgeBaseError):
    pass


class MissingPlatform(KnowledgeBaseError):
    pass


@dataclass(frozen=True)
class DeploymentContext:
    """Resolved join of deployment -> instrument -> platform -> location."""

    deployment: Iri
    instrument: Iri
    instrument_label: str
    platform: Iri | None
    platform_label: str
    platform_class: Iri | None
    latitude: Decimal | None = None
    longitude: Decimal | None = None
    started_at: datetime | None = None

    def __post_init__(self):
        if self.latitude is not None and not (-90 <= self.latitude <= 90):
            raise ValueError(f"latitude out of range: {self.latitude}")
        if self.longitude is not None and not (-180 <= self.longitude <= 180):
            raise ValueError(f"longitude out of range: {self.longitude}")


@dataclass
class MetadataLoadReport:
    triples_added: int = 0
    instances_by_type: dict[str, int] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


class _State:
    """Graph plus derived caches, swapped atomically on every load."""

    def __init__(self, graph: Graph):
        self.graph = graph
        self.by_type: dict[Iri, set] = {}
        self.labels: dict = {}
        self.superclasses: dict[Iri, set[Iri]] = {}
        for t in graph:
            if t.predicate == vocab.RDF_TYPE and isinstance(t.object, Iri):
                self.by_type.setdefault(t.object, set()).add(t.subject)
            elif t.predicate == vocab.RDFS_LABEL and isinstance(t.object, Literal):
                self.labels.setdefault(t.subject, t.object.lexical)
            elif t.predicate == vocab.RDFS_SUBCLASS_OF and isinstance(t.subject, Iri) \
                    and isinstance(t.object, Iri):
                self.superclasses.setdefault(t.subject, set()).add(t.object)

    def ancestors(self, cls: Iri) -> set[Iri]:
        """Reflexive transitive closure over subClassOf edges."""
        seen = {cls}
        stack = [cls]
        while stack:
            for parent in self.superclasses.get(stack.pop(), ()):
                if parent not in seen:
                    seen.add(parent)
                    stack.append(parent)
        return seen

    def descendants(self, cls: Iri) -> set[Iri]:
        children: dict[Iri, set[Iri]] = {}
        for sub, supers in self.superclasses.items():
            for sup in supers:
                children.setdefault(sup, set()).add(sub)
        seen = {cls}
        stack = [cls]
        while stack:
            for child in children.get(stack.pop(), ()):
                if child not in seen:
                    seen.add(child)
                    stack.append(child)
        return seen


class KnowledgeBase:
    """Named triple store holding schema, domain ontology and sensor network.

    Reads are lock-free against an immutable state snapshot; loads build a
    new snapshot and swap it in, so concurrent readers see either the
    pre-load or post-load graph, never a partial one.
    """

    def __init__(self, name: str, base: Iri = vocab.DEFAULT_DATA_BASE):
        self.name = name
        self.base = base
        self._write_lock = threading.Lock()
        self._state = _State(Graph())

    @property
    def graph(self) -> Graph:
        return self._state.graph

    def load_metadata(self, turtle: str) -> MetadataLoadReport:
        """Parse Turtle and merge it into the knowledge base graph."""
        incoming = parse_turtle(turtle, self.base)
        report = MetadataLoadReport()
        with self._write_lock:
            old = self._state.graph
            added = incoming.triples - old.triples
            report.triples_added = len(added)
            for t in added:
                if t.predicate == vocab.RDF_TYPE and isinstance(t.object, Iri):
                    key = t.object.value
                    report.instances_by_type[key] = report.instances_by_type.get(key, 0) + 1
            new_state = _State(old.union(incoming))
            self._check_schema(new_state, added, report)
            self._state = new_state
        return report

    def _check_schema(self, state: _State, added, report: MetadataLoadReport) -> None:
        # geo coordinates on something that is not a platform: suspicious
        # but allowed; flagged so network curators notice typing mistakes.
        for t in added:
            if t.predicate in (vocab.GEO_LAT, vocab.GEO_LONG):
                types = {
                    tt.object for tt in match(state.graph, t.subject, vocab.RDF_TYPE, None)
                }
                if not any(
                    isinstance(c, Iri) and vocab.VSTOI_PLATFORM in state.ancestors(c)
                    for c in types
                ):
                    report.warnings.append(
                        f"{t.subject} carries {t.predicate.value.rsplit('#', 1)[-1]} "
                        "but is not typed as a platform"
                    )

    def load_bundled(self) -> MetadataLoadReport:
        """Load the schema, domain ontology and Fortaleza fixture shipped in-package."""
        total = MetadataLoadReport()
        for filename in BUNDLED_FILES:
            text = resources.files("ccsv.data").joinpath(filename).read_text("utf-8")
            rep = self.load_metadata(text)
            total.triples_added += rep.triples_added
            for k, v in rep.instances_by_type.items():
                total.instances_by_type[k] = total.instances_by_type.get(k, 0) + v
            total.warnings.extend(rep.warnings)
        return total

    def load_files(self, paths) -> MetadataLoadReport:
        total = MetadataLoadReport()
        for path in paths:
            with open(path, encoding="utf-8") as fh:
                rep = self.load_metadata(fh.read())
            total.triples_added += rep.triples_added
            for k, v in rep.instances_by_type.items():
                total.instances_by_type[k] = total.instances_by_type.get(k, 0) + v
            total.warnings.extend(rep.warnings)
        return total

    # -- queries ------------------------------------------------------------

    def has_instance(self, node: Iri, cls: Iri) -> bool:
        state = self._state
        return any(
            isinstance(c, Iri) and cls in state.ancestors(c)
            for c in self._types_of(node, state)
        )

    def _types_of(self, node, state: _State):
        return [
            t.object for t in match(state.graph, node, vocab.RDF_TYPE, None)
            if isinstance(t.object, Iri)
        ]

    def is_subclass_of(self, sub: Iri, sup: Iri) -> bool:
        """True iff sup is reachable from sub via subClassOf edges (reflexive)."""
        return sup in self._state.ancestors(sub)

    def is_declared_class(self, cls: Iri) -> bool:
        state = self._state
        return cls in state.superclasses or any(
            cls in supers for supers in state.superclasses.values()
        )

    def list_instances(self, cls: Iri, transitive: bool = False) -> list[tuple[Iri, str]]:
        state = self._state
        classes = state.descendants(cls) if transitive else {cls}
        found = set()
        for c in classes:
            found |= {n for n in state.by_type.get(c, set()) if isinstance(n, Iri)}
        return sorted(
            ((n, state.labels.get(n, "")) for n in found), key=lambda pair: pair[0].value
        )

    def entity_for_characteristic(self, characteristic: Iri) -> Iri | None:
        hits = match(self._state.graph, characteristic, vocab.OBOE_CHARACTERISTIC_FOR, None)
        for t in hits:
            if isinstance(t.object, Iri):
                return t.object
        return None

    def resolve_deployment(
        self, deployment: Iri, allow_missing_platform: bool = False
    ) -> DeploymentContext:
        """Follow deployment -> instrument / platform links and pick up
        labels, coordinates and start time.
        """
        state = self._state
        if not self.has_instance(deployment, vocab.VSTOI_DEPLOYMENT):
            raise UnknownDeployment(f"unknown deployment {deployment}", deployment)

        instrument = self._single_object(state, deployment, vocab.VSTOI_HAS_INSTRUMENT)
        if instrument is None:
            raise MissingInstrument(
                f"deployment {deployment} has no instrument link", deployment
            )
        platform = self._single_object(state, deployment, vocab.VSTOI_HAS_PLATFORM)
        if platform is None and not allow_missing_platform:
            raise MissingPlatform(
                f"deployment {deployment} has no platform link", deployment
            )

        platform_class = None
        lat = lon = None
        platform_label = ""
        if platform is not None:
            platform_label = state.labels.get(platform, "")
            for c in self._types_of(platform, state):
                if vocab.VSTOI_PLATFORM in state.ancestors(c):
                    platform_class = c
                    break
            lat = self._coordinate(state, platform, vocab.GEO_LAT)
            lon = self._coordinate(state, platform, vocab.GEO_LONG)

        started_at = None
        for t in match(state.graph, deployment, vocab.PROV_STARTED_AT_TIME, None):
            if isinstance(t.object, Literal):
                try:
                    started_at = parse_instant(t.object.lexical)
                except ValueError:
                    pass
                break

        return DeploymentContext(
            deployment=deployment,
            instrument=instrument,
            instrument_label=state.labels.get(instrument, ""),
            platform=platform,
            platform_label=platform_label,
            platform_class=platform_class,
            latitude=lat,
            longitude=lon,
            started_at=started_at,
        )

    @staticmethod
    def _single_object(state: _State, subject, predicate) -> Iri | None:
        for t in match(state.graph, subject, predicate, None):
            if isinstance(t.object, Iri):
                return t.object
        return None

    @staticmethod
    def _coordinate(state: _State, subject, predicate) -> Decimal | None:
        for t in match(state.graph, subject, predicate, None):
            if isinstance(t.object, Literal):
                try:
                    # Decimal keeps the lexical form (trailing zeros included)
                    return Decimal(t.object.lexical)
                except InvalidOperation:
                    return None
        return None
