"""Serialization tests: JSON schema, CSV, LaTeX, rational formatting."""

import json
from fractions import Fraction
from pathlib import Path

import pytest

import liepres
from liepres.table import StructureTable
from liepres import tabledoc
from liepres.tabledoc import (
    SchemaError,
    document_to_table,
    format_rational,
    from_json_text,
    load_table,
    parse_rational,
    save_table,
    table_to_document,
    to_csv,
    to_json_text,
    to_latex,
)

FIXTURES = Path(liepres.__file__).parent / "fixtures"
GOLDEN_PATH = FIXTURES / "g2_table.json"


@pytest.fixture(scope="module")
def golden():
    return load_table(str(GOLDEN_PATH))


def test_format_rational():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-5)) == "-5"
    assert format_rational(Fraction(0)) == "0"
    assert format_rational(Fraction(2, 4)) == "1/2"
    assert format_rational(Fraction(-7, 3)) == "-7/3"


def test_parse_rational_round_trip():
    vals = [Fraction(0), Fraction(17), Fraction(-4), Fraction(5, 6), Fraction(-11, 13)]
    for v in vals:
        assert parse_rational(format_rational(v)) == v


def test_parse_rational_rejects_garbage():
    with pytest.raises(SchemaError):
        parse_rational("abc")
    with pytest.raises(SchemaError):
        parse_rational("1/0")
    with pytest.raises(SchemaError):
        parse_rational(1.5)


def test_golden_file_is_a_serialization_fixed_point(golden):
    assert to_json_text(golden) == GOLDEN_PATH.read_text(encoding="utf-8")


def test_json_round_trip_and_determinism(golden):
    text = to_json_text(golden)
    again = from_json_text(text)
    assert again.names == golden.names
    assert again.c == golden.c
    assert to_json_text(again) == text


def test_save_and_load(tmp_path, golden):
    p = tmp_path / "out.json"
    save_table(golden, str(p))
    assert load_table(str(p)).c == golden.c


def test_document_shape(golden):
    doc = table_to_document(golden)
    assert doc["schema_version"] == "1"
    assert doc["dim"] == 14
    assert doc["names"][0] == "h1"
    pairs = [(rec["i"], rec["j"]) for rec in doc["brackets"]]
    assert pairs == sorted(pairs)
    assert all(i < j for i, j in pairs)


def make_doc(**overrides):
    doc = {
        "schema_version": "1",
        "dim": 2,
        "names": ["a", "b"],
        "brackets": [{"i": 0, "j": 1, "coefficients": {"a": "1"}}],
    }
    doc.update(overrides)
    return doc


def test_schema_rejections():
    with pytest.raises(SchemaError, match="JSON object"):
        document_to_table([1, 2])
    with pytest.raises(SchemaError, match="schema_version"):
        document_to_table(make_doc(schema_version="99"))
    with pytest.raises(SchemaError, match="missing field"):
        document_to_table({"schema_version": "1", "dim": 2, "names": ["a", "b"]})
    with pytest.raises(SchemaError, match="duplicate names"):
        document_to_table(make_doc(names=["a", "a"]))
    with pytest.raises(SchemaError, match="does not match"):
        document_to_table(make_doc(dim=3))
    with pytest.raises(SchemaError, match="0 <= i < j"):
        document_to_table(make_doc(brackets=[{"i": 1, "j": 0, "coefficients": {}}]))
    with pytest.raises(SchemaError, match="0 <= i < j"):
        document_to_table(make_doc(brackets=[{"i": 0, "j": 0, "coefficients": {}}]))
    with pytest.raises(SchemaError, match="unknown coefficient name"):
        document_to_table(make_doc(brackets=[{"i": 0, "j": 1, "coefficients": {"zz": "1"}}]))
    with pytest.raises(SchemaError, match="bad bracket record"):
        document_to_table(make_doc(brackets=[{"i": 0}]))


def test_floats_rejected_at_json_layer():
    doc = make_doc()
    doc["brackets"][0]["coefficients"]["a"] = 0.5
    with pytest.raises(SchemaError, match="floats are not exact"):
        from_json_text(json.dumps(doc))
    with pytest.raises(SchemaError, match="not valid JSON"):
        from_json_text("{nope")


def test_csv_shape(golden):
    lines = to_csv(golden).splitlines()
    assert lines[0] == "i,j," + ",".join(golden.names)
    assert len(lines) == 1 + 91
    row = next(l for l in lines if l.startswith("x1,x2,"))
    vec = row.split(",")[2:]
    assert vec[golden.index_of("y3")] == "2"
    assert sum(1 for x in vec if x != "0") == 1


def test_latex_shape(golden):
    out = to_latex(golden)
    assert out.startswith("\\begin{tabular}")
    assert out.rstrip().endswith("\\end{tabular}")
    assert "$2y_3$" in out
    assert "$a_{12}$" in out
    body = [l for l in out.splitlines() if l.startswith("$")]
    assert len(body) == 14
    # last basis row has every off-diagonal cell blank to its left
    last = body[-1]
    assert last.split(" & ")[1:-1] == [""] * 13


def test_empty_table_rejected():
    empty = StructureTable((), {})
    with pytest.raises(ValueError, match="empty table"):
        to_csv(empty)
    with pytest.raises(ValueError, match="empty table"):
        to_latex(empty)


def test_latex_coefficient_spelling():
    t = StructureTable(("u", "v", "w"), {(0, 1, 2): Fraction(-1), (0, 2, 0): Fraction(1, 2)})
    out = to_latex(t)
    assert "$-w$" in out
    assert "$1/2u$" in out
    t2 = StructureTable(("u", "v", "w"), {(0, 1, 1): Fraction(1), (0, 1, 2): Fraction(3)})
    assert "$v+3w$" in to_latex(t2)
