"""Generate synthetic single-instrument CCSV fixtures: one simulated day of
two buses crossing the two Fortaleza checkpoints.

The raw feed arrives as one multi-instrument file; this script performs the
per-instrument split, producing three documents (the checkpoint-1 stream is
additionally split in two, mimicking oversized-file splits).
"""

from __future__ import annotations

import argparse
import os
import random
from dataclasses import dataclass
from datetime import datetime, timedelta, timezone

PREAMBLE_TEMPLATE = """\
<pmf-kb>
  a ccsv:KnowledgeBase;
  ccsv:hasConnectionURL "urn:city:pmf-kb"^^xsd:anyURI .

<deployment-checkpoint-{cp}>
  a vstoi:Deployment;
  prov:startedAtTime "2015-02-01T00:00:00Z"^^xsd:dateTime;
  hasneto:hasDataCollection <datacollection-checkpoint-{cp}-{part}> .

<datacollection-checkpoint-{cp}-{part}>
  a hasneto:DataCollection; a time:Interval;
  prov:startedAtTime "2015-02-01T00:00:00Z"^^xsd:dateTime .

<gps-bus-information-checkpoint-{cp}-{part}>
  a vstoi:Dataset;
  prov:wasGeneratedBy <datacollection-checkpoint-{cp}-{part}> ;
  hasneto:hasMeasurementType <mt0> .

<mt0>
  a oboe:Measurement; a time:Instant;
  time:inDateTime <ts0>;
  ccsv:atColumn 1;
  oboe:ofCharacteristic pmf:ArrivalDeparture ;
  oboe:usesStandard pmf:Binary .

<ts0>
  a time:Instant; ccsv:atColumn 0 .
"""


@dataclass
class DayFixture:
    paths: list[str]
    events_per_checkpoint: dict[int, int]
    total_events: int


def _simulate_events(rng: random.Random, events_per_bus: int):
    """Each bus alternates arrival (1) / departure (0) at random checkpoints
    through the day; returns a per-checkpoint sorted event stream.
    """
    day_start = datetime(2015, 2, 1, tzinfo=timezone.utc)
    by_checkpoint: dict[int, list[tuple[datetime, str]]] = {1: [], 2: []}
    for _bus in range(2):
        t = day_start + timedelta(minutes=rng.randint(0, 120))
        for i in range(events_per_bus):
            cp = rng.choice((1, 2))
            value = "1" if i % 2 == 0 else "0"
            by_checkpoint[cp].append((t, value))
            t += timedelta(minutes=rng.randint(5, 40))
    for events in by_checkpoint.values():
        events.sort()
    return by_checkpoint


def _write_document(path: str, checkpoint: int, part: str, events) -> None:
    lines = [PREAMBLE_TEMPLATE.format(cp=checkpoint, part=part), "---", "timestamp,event"]
    for ts, value in events:
        lines.append(f"{ts.strftime('%Y-%m-%dT%H:%M:%SZ')},{value}")
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(lines) + "\n")


def generate_day(outdir: str, seed: int = 0, events_per_bus: int = 20) -> DayFixture:
    """Write three single-instrument CCSV files into outdir."""
    os.makedirs(outdir, exist_ok=True)
    rng = random.Random(seed)
    by_checkpoint = _simulate_events(rng, events_per_bus)

    cp1 = by_checkpoint[1]
    half = len(cp1) // 2
    parts = [
        (1, "a", cp1[:half]),
        (1, "b", cp1[half:]),
        (2, "a", by_checkpoint[2]),
    ]
    paths = []
    for cp, part, events in parts:
        path = os.path.join(outdir, f"gps-bus-information-checkpoint-{cp}-{part}.ccsv")
        _write_document(path, cp, part, events)
        paths.append(path)
    return DayFixture(
        paths=paths,
        events_per_checkpoint={cp: len(ev) for cp, ev in by_checkpoint.items()},
        total_events=sum(len(ev) for ev in by_checkpoint.values()),
    )


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("outdir")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--events-per-bus", type=int, default=20)
    args = parser.parse_args(argv)
    fixture = generate_day(args.outdir, args.seed, args.events_per_bus)
    for path in fixture.paths:
        print(path)
    print(f"events: {fixture.events_per_checkpoint} (total {fixture.total_events})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
