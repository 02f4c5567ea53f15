import os

import pytest

from ccsv.config import ArtifactConfig
from ccsv.kb import KnowledgeBase

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")

# the sensor-network fragment: two checkpoint instruments on two road
# segments, with labels and coordinates
NETWORK_FRAGMENT = """\
<checkpoint-1>
    a vstoi:Instrument ;
    rdfs:label "Dallas/Sobradinho/T F Paiva" .

<checkpoint-2>
    a vstoi:Instrument ;
    rdfs:label "Pedro Pereira/Imperador/T Goncalves" .

<checkpoint-platform-1>
    a hasneto-sc:RoadSegment ;
    rdfs:label "Dallas/Sobradinho/T F Paiva" ;
    geo:lat -3.79486600 ;
    geo:long -38.61625700 .

<checkpoint-platform-2>
    a hasneto-sc:RoadSegment ;
    rdfs:label "Pedro Pereira/Imperador/T Goncalves" ;
    geo:lat -3.72791200 ;
    geo:long -38.53405200 .
"""


@pytest.fixture(scope="session")
def golden_ccsv_text() -> str:
    with open(os.path.join(FIXTURES, "gps-bus-checkpoint-1.ccsv"), encoding="utf-8") as fh:
        return fh.read()


@pytest.fixture(scope="session")
def golden_ccsv_path() -> str:
    return os.path.join(FIXTURES, "gps-bus-checkpoint-1.ccsv")


@pytest.fixture(scope="session")
def kb() -> KnowledgeBase:
    kb = KnowledgeBase("pmf-kb")
    kb.load_bundled()
    return kb


@pytest.fixture()
def cfg(tmp_path) -> ArtifactConfig:
    return ArtifactConfig(snapshot_path=str(tmp_path / "index.snapshot"))
