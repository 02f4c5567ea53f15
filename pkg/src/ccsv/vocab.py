"""Well-known terms from the ontologies the pipeline relies on."""

from .rdf import DEFAULT_PREFIXES, Iri

_RDF = DEFAULT_PREFIXES["rdf"]
_RDFS = DEFAULT_PREFIXES["rdfs"]
_XSD = DEFAULT_PREFIXES["xsd"]
_PROV = DEFAULT_PREFIXES["prov"]
_TIME = DEFAULT_PREFIXES["time"]
_GEO = DEFAULT_PREFIXES["geo"]
_OBOE = DEFAULT_PREFIXES["oboe"]
_VSTOI = DEFAULT_PREFIXES["vstoi"]
_HASNETO = DEFAULT_PREFIXES["hasneto"]
_HASNETO_SC = DEFAULT_PREFIXES["hasneto-sc"]
_CCSV = DEFAULT_PREFIXES["ccsv"]
_PMF = DEFAULT_PREFIXES["pmf"]

RDF_TYPE = Iri(_RDF + "type")
RDFS_LABEL = Iri(_RDFS + "label")
RDFS_SUBCLASS_OF = Iri(_RDFS + "subClassOf")

XSD_STRING = Iri(_XSD + "string")
XSD_INTEGER = Iri(_XSD + "integer")
XSD_DECIMAL = Iri(_XSD + "decimal")
XSD_DATETIME = Iri(_XSD + "dateTime")
XSD_ANYURI = Iri(_XSD + "anyURI")

PROV_ACTIVITY = Iri(_PROV + "Activity")
PROV_ENTITY = Iri(_PROV + "Entity")
PROV_AGENT = Iri(_PROV + "Agent")
PROV_STARTED_AT_TIME = Iri(_PROV + "startedAtTime")
PROV_WAS_GENERATED_BY = Iri(_PROV + "wasGeneratedBy")

TIME_INTERVAL = Iri(_TIME + "Interval")
TIME_INSTANT = Iri(_TIME + "Instant")
TIME_IN_DATETIME = Iri(_TIME + "inDateTime")

GEO_LAT = Iri(_GEO + "lat")
GEO_LONG = Iri(_GEO + "long")

OBOE_ENTITY = Iri(_OBOE + "Entity")
OBOE_CHARACTERISTIC = Iri(_OBOE + "Characteristic")
OBOE_MEASUREMENT = Iri(_OBOE + "Measurement")
OBOE_BASE_UNIT = Iri(_OBOE + "BaseUnit")
OBOE_OF_CHARACTERISTIC = Iri(_OBOE + "ofCharacteristic")
OBOE_USES_STANDARD = Iri(_OBOE + "usesStandard")
# associates a characteristic with the entity it is measured on
OBOE_CHARACTERISTIC_FOR = Iri(_OBOE + "characteristicFor")

VSTOI_PLATFORM = Iri(_VSTOI + "Platform")
VSTOI_INSTRUMENT = Iri(_VSTOI + "Instrument")
VSTOI_DETECTOR = Iri(_VSTOI + "Detector")
VSTOI_DEPLOYMENT = Iri(_VSTOI + "Deployment")
VSTOI_DATASET = Iri(_VSTOI + "Dataset")
# reconstructed linking vocabulary: joins a deployment to what was deployed
VSTOI_HAS_INSTRUMENT = Iri(_VSTOI + "hasInstrument")
VSTOI_HAS_PLATFORM = Iri(_VSTOI + "hasPlatform")

HASNETO_DATA_COLLECTION = Iri(_HASNETO + "DataCollection")
HASNETO_HAS_DATA_COLLECTION = Iri(_HASNETO + "hasDataCollection")
HASNETO_HAS_MEASUREMENT_TYPE = Iri(_HASNETO + "hasMeasurementType")

CCSV_KNOWLEDGE_BASE = Iri(_CCSV + "KnowledgeBase")
CCSV_HAS_CONNECTION_URL = Iri(_CCSV + "hasConnectionURL")
CCSV_AT_COLUMN = Iri(_CCSV + "atColumn")

PMF_BUS = Iri(_PMF + "Bus")
PMF_ARRIVAL_DEPARTURE = Iri(_PMF + "ArrivalDeparture")
PMF_BINARY = Iri(_PMF + "Binary")

# Shared namespace for city data instances: every relative name in
# knowledge-base files and document preambles resolves against this base so
# that a preamble's <deployment-...> reference lands on the same IRI as the
# knowledge base's deployment node.
DEFAULT_DATA_BASE = Iri("urn:city:")
