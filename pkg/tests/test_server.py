import json

import pytest
from fastapi.testclient import TestClient

from ccsv.cli import main
from ccsv.config import ArtifactConfig
from ccsv.server import create_app
from ccsv.simulate import generate_day
from docbuilder import make_ccsv


@pytest.fixture()
def served(tmp_path):
    cfg = ArtifactConfig(snapshot_path=str(tmp_path / "index.snapshot"))
    fixture = generate_day(str(tmp_path / "docs"), seed=11)
    with TestClient(create_app(cfg)) as client:
        for path in fixture.paths:
            with open(path, encoding="utf-8") as fh:
                resp = client.post(
                    "/api/datasets",
                    content=fh.read(),
                    headers={"content-type": "text/vnd.ccsv"},
                )
            assert resp.status_code == 202, resp.text
        yield client, fixture, cfg


def test_health(tmp_path):
    cfg = ArtifactConfig(snapshot_path=str(tmp_path / "s"))
    with TestClient(create_app(cfg)) as client:
        resp = client.get("/api/health")
        assert resp.status_code == 200
        assert resp.json() == {"status": "ok", "records": 0}


def test_search_empty_index(tmp_path):
    cfg = ArtifactConfig(snapshot_path=str(tmp_path / "s"))
    with TestClient(create_app(cfg)) as client:
        payload = client.get("/api/search").json()
        assert payload["total"] == 0
        assert payload["records"] == []
        assert "instrument" in payload["facetable"]


def test_post_dataset_then_search(served):
    client, fixture, _ = served
    payload = client.get("/api/search", params={"facet": "instrument"}).json()
    assert payload["total"] == fixture.total_events
    counts = {e["value"]: e["count"] for e in payload["facets"]["instrument"]}
    assert counts["urn:city:checkpoint-1"] == fixture.events_per_checkpoint[1]
    assert counts["urn:city:checkpoint-2"] == fixture.events_per_checkpoint[2]


def test_search_filter_and_paging(served):
    client, fixture, _ = served
    seen = []
    offset = 0
    while True:
        page = client.get(
            "/api/search",
            params={
                "filter": "instrument:checkpoint-1",
                "limit": 7,
                "offset": offset,
            },
        ).json()
        seen.extend(r["record_id"] for r in page["records"])
        offset += 7
        if offset >= page["total"]:
            break
    assert len(seen) == fixture.events_per_checkpoint[1]
    assert len(set(seen)) == len(seen)


def test_search_unknown_field_error_code(served):
    client, _, _ = served
    resp = client.get("/api/search", params={"filter": "bogus:1"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "unknown_field"


def test_search_bad_filter_shape(served):
    client, _, _ = served
    resp = client.get("/api/search", params={"filter": "no-colon-here"})
    assert resp.status_code == 400
    assert resp.json()["code"] == "bad_request"


def test_kb_instruments(served):
    client, _, _ = served
    payload = client.get("/api/kb/instruments").json()
    iris = [e["iri"] for e in payload["instruments"]]
    assert "urn:city:checkpoint-1" in iris
    assert "urn:city:checkpoint-2" in iris


def test_kb_deployment_lookup(served):
    client, _, _ = served
    payload = client.get("/api/kb/deployments/deployment-checkpoint-1").json()
    assert payload["instrument"] == "urn:city:checkpoint-1"
    assert payload["latitude"] == "-3.79486600"
    assert payload["longitude"] == "-38.61625700"


def test_kb_deployment_not_found(served):
    client, _, _ = served
    resp = client.get("/api/kb/deployments/deployment-nope")
    assert resp.status_code == 404
    assert resp.json()["code"] == "not_found"


def test_post_dataset_format_error(served):
    client, _, _ = served
    resp = client.post("/api/datasets", content="not a ccsv document")
    assert resp.status_code == 400
    assert resp.json()["code"] == "format_error"


def test_post_dataset_validation_error(served):
    client, _, _ = served
    resp = client.post("/api/datasets", content=make_ccsv(2, deployment="deployment-ghost"))
    assert resp.status_code == 422
    assert resp.json()["code"] == "validation_error"
    assert resp.json()["subject"] == "urn:city:deployment-ghost"


def test_cli_api_parity(served, capsys, tmp_path):
    client, fixture, cfg = served
    api = client.get(
        "/api/search",
        params={"filter": "instrument:checkpoint-1", "facet": "instrument", "limit": 1000},
    ).json()

    cfg_file = tmp_path / "parity.toml"
    cfg_file.write_text(
        f'snapshot_path = "{cfg.snapshot_path}"\n\n[[knowledge_base]]\nname = "pmf-kb"\n'
    )
    assert (
        main(
            [
                "--config",
                str(cfg_file),
                "--format",
                "json",
                "query",
                "--filter",
                "instrument=checkpoint-1",
                "--facet",
                "instrument",
                "--limit",
                "1000",
            ]
        )
        == 0
    )
    cli = json.loads(capsys.readouterr().out)
    assert cli["total"] == api["total"]
    assert [r["record_id"] for r in cli["records"]] == [
        r["record_id"] for r in api["records"]
    ]
    assert cli["facets"] == api["facets"]


def test_shutdown_flushes_snapshot_and_restart_matches(tmp_path):
    cfg = ArtifactConfig(snapshot_path=str(tmp_path / "index.snapshot"))
    fixture = generate_day(str(tmp_path / "docs"), seed=12)
    with TestClient(create_app(cfg)) as client:
        with open(fixture.paths[0], encoding="utf-8") as fh:
            client.post("/api/datasets", content=fh.read())
        before = client.get("/api/search", params={"limit": 1000}).json()
    with TestClient(create_app(cfg)) as client:
        after = client.get("/api/search", params={"limit": 1000}).json()
    assert after == before


def test_corrupt_snapshot_refuses_start(tmp_path):
    snap = tmp_path / "index.snapshot"
    snap.write_bytes(b"garbage")
    cfg = ArtifactConfig(snapshot_path=str(snap))
    with pytest.raises(Exception):
        with TestClient(create_app(cfg)):
            pass
