"""Contextualized CSV (CCSV) ingestion pipeline for city sensor data:
Turtle-preamble parsing, knowledge-base resolution, measurement
normalization, and faceted search.
"""

from .document import CcsvDocument, parse_ccsv, split_document, validate_against_kb
from .index import FacetedQuery, MeasurementIndex, SearchResult
from .kb import DeploymentContext, KnowledgeBase
from .loader import LoadReport, MeasurementRecord, load, normalize
from .rdf import Graph, Iri, Literal, Triple, match, parse_turtle, serialize_turtle

__version__ = "0.1.0"
