from fractions import Fraction as F
import copy
import json
import os

import pytest
from hypothesis import given, settings, strategies as st

from patternspace import catalog
from patternspace.geometry import Window
from patternspace.instances import PointSet
from patternspace.derivability import MLDWitness, verify_mld_witness
from patternspace.io import (encode, encode_obj, decode, decode_obj, load, dump, dec_q, enc_q,
                             ParseError, SchemaVersionError)

from conftest import DATA

DOCS = sorted(f for f in os.listdir(DATA) if f.endswith(".json"))
SCHEMA = os.path.join(os.path.dirname(__file__), "..", "src", "patternspace", "schema",
                      "pattern_document.schema.json")


@pytest.mark.parametrize("name", DOCS)
def test_data_round_trip(name):
    path = os.path.join(DATA, name)
    text = open(path, encoding="utf-8").read()
    obj, meta = load(path, with_metadata=True)
    # canonical form: re-encoding gives the same bytes
    assert encode(obj, meta or None) == text
    assert decode(encode(obj)) == obj or isinstance(obj, MLDWitness)


@pytest.mark.parametrize("name", DOCS)
def test_data_matches_schema(name):
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.load(open(SCHEMA, encoding="utf-8"))
    jsonschema.validate(json.load(open(os.path.join(DATA, name), encoding="utf-8")), schema)


def test_zsq_encoding(zsq):
    v = encode_obj(zsq)
    assert v["payload"]["basis"] == [["1", "0"], ["0", "1"]]
    assert v["payload"]["motif"] == [["0", "0"]]
    assert v["kind"] == "PointSet" and v["dimension"] == 2


def test_checkerboard_round_trip():
    cb = catalog.checkerboard(2, "inversion")
    back = decode(encode(cb))
    assert back == cb and back.group == cb.group
    W = Window.ball((F(1, 3), 0), 3)
    assert back.cut(W) == cb.cut(W)


def test_finite_point_set_round_trip():
    p = PointSet(catalog.group(2), [(F(-1, 3), F(7, 2)), (0, 0)])
    assert decode(encode(p)) == p


@settings(deadline=None, max_examples=100)
@given(n=st.integers(-10 ** 9, 10 ** 9), d=st.integers(1, 10 ** 9))
def test_rational_round_trip(n, d):
    assert dec_q(enc_q(F(n, d))) == F(n, d)


@pytest.mark.parametrize("bad", ["1/0", "1.5", "", "a", "1/-2", "--1"])
def test_bad_rationals(bad):
    with pytest.raises(ParseError):
        dec_q(bad)


def test_floats_rejected():
    with pytest.raises(ParseError):
        dec_q(0.5)


def _zsq_doc():
    return json.load(open(os.path.join(DATA, "zsq.json"), encoding="utf-8"))


def test_schema_version_mismatch():
    v = _zsq_doc()
    v["schema_version"] = 2
    with pytest.raises(SchemaVersionError):
        decode_obj(v)


def test_unknown_field_rejected():
    v = _zsq_doc()
    v["payload"]["colour"] = "red"
    with pytest.raises(ParseError, match="colour"):
        decode_obj(v)


def test_zero_denominator_field_path():
    v = _zsq_doc()
    v["payload"]["basis"][0][0] = "1/0"
    with pytest.raises(ParseError) as exc:
        decode_obj(v)
    assert "payload" in exc.value.field


def test_invalid_json_reports_line():
    with pytest.raises(ParseError) as exc:
        decode('{\n  "schema_version": 1,\n  oops\n}')
    assert exc.value.line == 3


def test_body_field_mismatch():
    v = _zsq_doc()
    v["object"] = "rule"
    with pytest.raises(ParseError):
        decode_obj(v)


def test_decoded_witness_verifies(zsq):
    wit = load(os.path.join(DATA, "zsq_voronoi_witness.json"))
    T = load(os.path.join(DATA, "zsq_voronoi.json"))
    assert verify_mld_witness(wit, zsq, T, [1, 2])


def test_dump_load(tmp_path, fifth):
    path = tmp_path / "f.json"
    dump(fifth, path, {"note": "x"})
    obj, meta = load(path, with_metadata=True)
    assert obj == fifth and meta == {"note": "x"}
