from datetime import datetime, timezone

import pytest
from hypothesis import given, strategies as st

from ccsv import vocab
from ccsv.document import (
    ColumnOutOfRange,
    CsvShapeError,
    CsvTable,
    DELIMITER,
    DuplicateNode,
    MissingDelimiter,
    PreambleIncomplete,
    parse_ccsv,
    parse_csv_body,
    split_document,
    validate_against_kb,
)
from ccsv.rdf import Iri


def test_split_basic():
    pre, body = split_document("(ttl)\n---\na,b\n1,2\n")
    assert pre == "(ttl)\n"
    assert body == "a,b\n1,2\n"


def test_split_missing_delimiter():
    with pytest.raises(MissingDelimiter):
        split_document("just a csv\n1,2\n")


def test_split_allows_trailing_whitespace_on_delimiter():
    pre, body = split_document("x\n---   \ny\n")
    assert (pre, body) == ("x\n", "y\n")


def test_split_golden_body_rows(golden_ccsv_text):
    _, body = split_document(golden_ccsv_text)
    table = parse_csv_body(body)
    assert table.header == ("timestamp", "event")
    assert len(table.rows) == 3


@given(
    st.lists(
        st.text(alphabet=st.characters(blacklist_characters="\r\n"), max_size=30).filter(
            lambda s: s.rstrip() != DELIMITER
        ),
        max_size=8,
    ),
    st.lists(st.text(alphabet=st.characters(blacklist_characters="\r\n"), max_size=30), max_size=8),
)
def test_split_concatenation_reconstructs(pre_lines, body_lines):
    source = "".join(line + "\n" for line in pre_lines)
    source += DELIMITER + "\n"
    source += "".join(line + "\n" for line in body_lines)
    pre, body = split_document(source)
    assert pre + DELIMITER + "\n" + body == source


def test_csv_quoting():
    table = parse_csv_body('a,b\n"x,y",2\n')
    assert table.rows == (("x,y", "2"),)


def test_csv_ragged_row_rejected():
    with pytest.raises(CsvShapeError):
        parse_csv_body("a,b\n1\n")


def test_csv_duplicate_header_rejected():
    with pytest.raises(CsvShapeError):
        CsvTable(header=("a", " a"), rows=())


def test_parse_ccsv_golden_model(golden_ccsv_text):
    doc = parse_ccsv(golden_ccsv_text, "gps-bus-checkpoint-1")
    m = doc.model
    assert m.deployment == Iri("urn:city:deployment-checkpoint-1")
    assert m.deployment_started_at == datetime(2015, 2, 1, tzinfo=timezone.utc)
    assert m.data_collection == Iri("urn:city:datacollection-checkpoint-1")
    assert m.dataset == Iri("urn:city:gps-bus-information-checkpoint-1")
    assert m.kb_connection_url == "http..."
    assert len(m.measurement_types) == 1
    mt = m.measurement_types[0]
    assert mt.column == 1
    assert mt.characteristic == vocab.PMF_ARRIVAL_DEPARTURE
    assert mt.standard == vocab.PMF_BINARY
    assert m.timestamps == (next(iter(m.timestamps)),)
    assert m.timestamps[0].column == 0
    assert mt.timestamp_ref == m.timestamps[0].id


def test_parse_ccsv_deterministic(golden_ccsv_text):
    a = parse_ccsv(golden_ccsv_text, "x")
    b = parse_ccsv(golden_ccsv_text, "x")
    assert a.model == b.model
    assert a.body == b.body


def test_missing_dataset_block(golden_ccsv_text):
    lines = golden_ccsv_text.splitlines(keepends=True)
    without = [
        line
        for line in lines
        if "gps-bus-information" not in line
        and "vstoi:Dataset" not in line
        and "wasGeneratedBy" not in line
        and "hasMeasurementType" not in line
    ]
    with pytest.raises(PreambleIncomplete) as exc:
        parse_ccsv("".join(without), "x")
    assert "vstoi:Dataset" in str(exc.value)


def test_duplicate_dataset_block(golden_ccsv_text):
    extra = (
        "<second-dataset> a vstoi:Dataset ; "
        "prov:wasGeneratedBy <datacollection-checkpoint-1> ; "
        "hasneto:hasMeasurementType <mt0> .\n"
    )
    source = golden_ccsv_text.replace("---", extra + "---", 1)
    with pytest.raises(DuplicateNode):
        parse_ccsv(source, "x")


def test_column_out_of_range(golden_ccsv_text):
    source = golden_ccsv_text.replace("ccsv:atColumn 1;", "ccsv:atColumn 5;")
    with pytest.raises(ColumnOutOfRange):
        parse_ccsv(source, "x")


def test_measurement_column_may_not_be_its_timestamp_column(golden_ccsv_text):
    source = golden_ccsv_text.replace("ccsv:atColumn 1;", "ccsv:atColumn 0;")
    with pytest.raises(ValueError, match="timestamp column"):
        parse_ccsv(source, "x")


def test_collection_must_not_start_before_deployment(golden_ccsv_text):
    source = golden_ccsv_text.replace(
        '<datacollection-checkpoint-1>\n  a hasneto:DataCollection; a time:Interval;\n'
        '  prov:startedAtTime "2015-02-01T00:00:00Z"^^xsd:dateTime .',
        '<datacollection-checkpoint-1>\n  a hasneto:DataCollection; a time:Interval;\n'
        '  prov:startedAtTime "2015-01-15T00:00:00Z"^^xsd:dateTime .',
    )
    assert "2015-01-15" in source
    with pytest.raises(ValueError, match="before its deployment"):
        parse_ccsv(source, "x")


def test_validate_against_kb_clean(golden_ccsv_text, kb):
    doc = parse_ccsv(golden_ccsv_text, "x")
    assert validate_against_kb(doc, kb) == []


def test_validate_unknown_deployment(golden_ccsv_text, kb):
    source = golden_ccsv_text.replace("deployment-checkpoint-1", "deployment-unknown")
    doc = parse_ccsv(source, "x")
    diags = validate_against_kb(doc, kb)
    errors = [d for d in diags if d.severity == "error"]
    assert len(errors) == 1
    assert "deployment not found" in errors[0].message


def test_validate_unknown_characteristic_warns(golden_ccsv_text, kb):
    source = golden_ccsv_text.replace("pmf:ArrivalDeparture", "pmf:Mystery")
    doc = parse_ccsv(source, "x")
    diags = validate_against_kb(doc, kb)
    assert [d.severity for d in diags] == ["warning"]
    assert "characteristic" in diags[0].message
