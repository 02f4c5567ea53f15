"""Synthetic measurement records and the linear-scan search oracle."""

import random
from datetime import datetime, timedelta, timezone
from decimal import Decimal

from ccsv.index import FacetedQuery, record_to_fields
from ccsv.loader import MeasurementRecord
from ccsv.rdf import Iri

DAY = datetime(2015, 2, 1, tzinfo=timezone.utc)

INSTRUMENTS = [f"urn:city:checkpoint-{i}" for i in range(1, 6)]
PLATFORMS = [f"urn:city:checkpoint-platform-{i}" for i in range(1, 6)]
CHARACTERISTICS = [
    "http://purl.org/fortaleza/pmf#ArrivalDeparture",
    "http://purl.org/fortaleza/pmf#Speed",
]
UNITS = [
    "http://purl.org/fortaleza/pmf#Binary",
    "http://purl.org/fortaleza/pmf#KmPerHour",
]
COLLECTIONS = [f"urn:city:datacollection-{i}" for i in range(1, 4)]


def make_records(n: int, rng: random.Random) -> list[MeasurementRecord]:
    records = []
    for i in range(n):
        k = rng.randrange(len(INSTRUMENTS))
        records.append(
            MeasurementRecord(
                record_id=f"r{i:06d}",
                value=str(rng.randint(0, 1)),
                timestamp=DAY + timedelta(seconds=rng.randrange(86400)),
                entity=Iri("http://purl.org/fortaleza/pmf#Bus") if rng.random() < 0.8 else None,
                characteristic=Iri(rng.choice(CHARACTERISTICS)),
                unit=Iri(rng.choice(UNITS)),
                instrument=Iri(INSTRUMENTS[k]),
                instrument_label=f"Checkpoint {k + 1}",
                platform=Iri(PLATFORMS[k]),
                platform_label=f"Road segment {k + 1}",
                latitude=Decimal(f"-3.{rng.randrange(10**6):06d}"),
                longitude=Decimal(f"-38.{rng.randrange(10**6):06d}"),
                data_collection=Iri(rng.choice(COLLECTIONS)),
                dataset=Iri(f"urn:city:ds-{rng.randrange(3)}"),
                source=f"file-{rng.randrange(3)}",
            )
        )
    return records


def random_query(rng: random.Random) -> FacetedQuery:
    filters = []
    if rng.random() < 0.7:
        filters.append(("instrument", rng.choice(INSTRUMENTS + ["urn:city:none"])))
    if rng.random() < 0.3:
        filters.append(("characteristic", rng.choice(CHARACTERISTICS)))
    if rng.random() < 0.2:
        filters.append(("value", str(rng.randint(0, 1))))
    time_range = None
    if rng.random() < 0.5:
        a = DAY + timedelta(seconds=rng.randrange(86400))
        b = DAY + timedelta(seconds=rng.randrange(86400))
        time_range = (min(a, b), max(a, b))
    facet_fields = tuple(
        rng.sample(
            ["instrument", "platform", "characteristic", "unit", "data_collection"],
            k=rng.randint(0, 3),
        )
    )
    return FacetedQuery(
        filters=tuple(filters),
        time_range=time_range,
        facet_fields=facet_fields,
        offset=rng.choice([0, 0, 5, 50]),
        limit=rng.choice([1, 10, 100, 1000]),
        sort_field=rng.choice(["timestamp", "record_id", "instrument"]),
        sort_dir=rng.choice(["asc", "desc"]),
    )


def oracle_search(records, q: FacetedQuery):
    """Brute-force filter + group-by; returns (total, id set, facet counts)."""
    matched = []
    for r in records:
        fields = record_to_fields(r)
        if any(fields[f] != v for f, v in q.filters):
            continue
        if q.time_range is not None:
            start, end = q.time_range
            if start is not None and r.timestamp < start:
                continue
            if end is not None and r.timestamp >= end:
                continue
        matched.append(r)
    facets = {}
    for name in q.facet_fields:
        counts = {}
        for r in matched:
            value = record_to_fields(r)[name]
            counts[value] = counts.get(value, 0) + 1
        facets[name] = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return len(matched), {r.record_id for r in matched}, facets
