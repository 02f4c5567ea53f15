import json
import os

import pytest

from ccsv.cli import main
from ccsv.simulate import generate_day
from docbuilder import make_ccsv


@pytest.fixture()
def workdir(tmp_path):
    cfg = tmp_path / "ccsv.toml"
    cfg.write_text(
        'snapshot_path = "index.snapshot"\n\n[[knowledge_base]]\nname = "pmf-kb"\n'
    )
    return tmp_path


def _run(workdir, *argv):
    return main(["--config", str(workdir / "ccsv.toml"), *argv])


def test_validate_golden_exit_zero(workdir, golden_ccsv_path, capsys):
    assert _run(workdir, "validate", golden_ccsv_path) == 0
    assert "ok" in capsys.readouterr().out


def test_validate_missing_delimiter_exit_one(workdir, tmp_path, capsys):
    bad = tmp_path / "nodelim.ccsv"
    bad.write_text("a,b\n1,2\n")
    assert _run(workdir, "validate", str(bad)) == 1
    assert "delimiter" in capsys.readouterr().out


def test_validate_unknown_deployment_exit_two(workdir, tmp_path, capsys):
    doc = tmp_path / "ghost.ccsv"
    doc.write_text(make_ccsv(2, deployment="deployment-ghost"))
    assert _run(workdir, "--format", "json", "validate", str(doc)) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is False
    assert payload["diagnostics"][0]["severity"] == "error"


def test_validate_unreadable_file_exit_three(workdir, tmp_path):
    assert _run(workdir, "validate", str(tmp_path / "missing.ccsv")) == 3


def test_load_and_query_end_to_end(workdir, capsys):
    fixture = generate_day(str(workdir / "docs"), seed=3)
    assert _run(workdir, "load", *fixture.paths) == 0
    out = capsys.readouterr().out
    assert out.count("records") == 3
    assert (workdir / "index.snapshot").exists()
    for path in fixture.paths:
        assert os.path.exists(os.path.splitext(path)[0] + ".normalized.csv")

    assert _run(workdir, "--format", "json", "query", "--facet", "instrument") == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["total"] == fixture.total_events
    counts = {
        entry["value"]: entry["count"] for entry in payload["facets"]["instrument"]
    }
    assert counts == {
        "urn:city:checkpoint-1": fixture.events_per_checkpoint[1],
        "urn:city:checkpoint-2": fixture.events_per_checkpoint[2],
    }


def test_load_partial_failure(workdir, tmp_path, capsys):
    fixture = generate_day(str(workdir / "docs"), seed=4)
    bad = tmp_path / "broken.ccsv"
    bad.write_text("no delimiter here\n")
    code = _run(workdir, "load", fixture.paths[0], str(bad), fixture.paths[1])
    assert code == 1
    out = capsys.readouterr().out
    assert "FAILED" in out
    assert out.count("->") == 2  # two successes still reported


def test_load_idempotent(workdir, capsys):
    fixture = generate_day(str(workdir / "docs"), seed=5)
    _run(workdir, "load", *fixture.paths)
    capsys.readouterr()
    _run(workdir, "--format", "json", "query")
    first_total = json.loads(capsys.readouterr().out)["total"]
    _run(workdir, "load", *fixture.paths)
    capsys.readouterr()
    _run(workdir, "--format", "json", "query")
    assert json.loads(capsys.readouterr().out)["total"] == first_total


def test_query_filter_by_local_name(workdir, capsys):
    fixture = generate_day(str(workdir / "docs"), seed=6)
    _run(workdir, "load", *fixture.paths)
    capsys.readouterr()
    assert (
        _run(
            workdir,
            "--format",
            "json",
            "query",
            "--filter",
            "instrument=checkpoint-1",
            "--limit",
            "1000",
        )
        == 0
    )
    payload = json.loads(capsys.readouterr().out)
    assert payload["total"] == fixture.events_per_checkpoint[1]
    assert all(
        r["instrument"] == "urn:city:checkpoint-1" for r in payload["records"]
    )


def test_query_unknown_field_exit_two(workdir, capsys):
    assert _run(workdir, "query", "--filter", "bogus=1") == 2


def test_query_time_range(workdir, capsys):
    fixture = generate_day(str(workdir / "docs"), seed=7)
    _run(workdir, "load", *fixture.paths)
    capsys.readouterr()
    _run(
        workdir,
        "--format",
        "json",
        "query",
        "--from",
        "2015-02-01T00:00:00Z",
        "--to",
        "2015-02-02T00:00:00Z",
    )
    assert json.loads(capsys.readouterr().out)["total"] == fixture.total_events


def test_bad_config_exit_three(tmp_path, capsys):
    cfg = tmp_path / "broken.toml"
    cfg.write_text("not toml [[[")
    assert main(["--config", str(cfg), "query"]) == 3
