"""File formats: parsing, canonical serialization, cube and morphism files."""

import glob
import json
import os

import pytest

from conftest import DATA_DIR, data_path
from nleib.catalog import h3
from nleib.exactla import Field
from nleib.files import (
    ParseError,
    SemanticError,
    format_field,
    load_algebra,
    load_cube,
    load_morphism,
    parse_algebra,
    parse_field,
    serialize_algebra,
    serialize_cube_ideals,
    serialize_morphism,
)
from nleib.nalg import validate_lie


def test_parse_field():
    assert parse_field("Q") == Field(0)
    assert parse_field("F5") == Field(5)
    assert format_field(Field(7)) == "F7"
    for bad in ("F2", "F4", "Fx", "R", "q"):
        with pytest.raises(ParseError):
            parse_field(bad)


def test_h3_file_example():
    doc = {
        "name": "h3",
        "n": 2,
        "dim": 3,
        "field": "Q",
        "brackets": [
            {"args": [1, 2], "value": {"3": "1"}},
            {"args": [2, 1], "value": {"3": "-1"}},
        ],
    }
    a = parse_algebra(doc)
    assert validate_lie(a).ok
    assert a.structure == h3().structure


def test_out_of_range_index_is_parse_error():
    doc = {"name": "x", "n": 2, "dim": 3, "field": "Q",
           "brackets": [{"args": [1, 5], "value": {"3": "1"}}]}
    with pytest.raises(ParseError):
        parse_algebra(doc)
    doc2 = {"name": "x", "n": 2, "dim": 3, "field": "Q",
            "brackets": [{"args": [1, 2], "value": {"9": "1"}}]}
    with pytest.raises(ParseError):
        parse_algebra(doc2)


def test_duplicate_args_rejected():
    doc = {"name": "x", "n": 2, "dim": 2, "field": "Q",
           "brackets": [{"args": [1, 2], "value": {"1": "1"}},
                        {"args": [1, 2], "value": {"2": "1"}}]}
    with pytest.raises(ParseError):
        parse_algebra(doc)


def test_scalar_strings():
    doc = {"name": "x", "n": 2, "dim": 1, "field": "Q",
           "brackets": [{"args": [1, 1], "value": {"1": "2/4"}}]}
    a = parse_algebra(doc)
    assert serialize_algebra(a).count('"1/2"') == 1
    doc["brackets"][0]["value"]["1"] = "0.5"
    with pytest.raises(ParseError):
        parse_algebra(doc)


def test_round_trip_all_shipped_fixtures():
    paths = sorted(glob.glob(os.path.join(DATA_DIR, "*.json")))
    assert paths
    for p in paths:
        base = os.path.basename(p)
        if base.startswith(("cube_", "morphism_")):
            continue
        a = load_algebra(p)
        with open(p, encoding="utf-8") as fh:
            assert serialize_algebra(a) == fh.read(), base


def test_field_override():
    a = load_algebra(data_path("h3.json"), Field(5))
    assert a.field == Field(5)
    assert validate_lie(a).ok


def test_load_cube_ideals_mode():
    c = load_cube(data_path("cube_h3_square.json"))
    assert c.m == 2 and c.domain.dim == 3
    c1 = load_cube(data_path("cube_h3_e3.json"))
    assert c1.m == 1 and c1.node((1,)).dim == 2


def test_cube_serialization_round_trip():
    c = load_cube(data_path("cube_h3_square.json"))
    from nleib.nalg import kernel_ideal
    ideals = [kernel_ideal(c.arrows[((), (i,))]) for i in (1, 2)]
    text = serialize_cube_ideals("h3.json", c.domain, ideals)
    with open(data_path("cube_h3_square.json"), encoding="utf-8") as fh:
        assert text == fh.read()


def test_explicit_cube_mode(tmp_path):
    a = h3()
    alg_doc = json.loads(serialize_algebra(a))
    quotient_doc = {"name": "q", "n": 2, "dim": 2, "field": "Q", "brackets": []}
    doc = {
        "m": 1,
        "mode": "explicit",
        "nodes": {"": alg_doc, "1": quotient_doc},
        "arrows": {"->1": [["1", "0", "0"], ["0", "1", "0"]]},
    }
    p = tmp_path / "cube.json"
    p.write_text(json.dumps(doc))
    c = load_cube(str(p))
    assert c.m == 1 and c.node((1,)).dim == 2
    # a matrix that is not a morphism is a semantic error
    doc["arrows"]["->1"] = [["0", "0", "1"], ["0", "1", "0"]]
    p.write_text(json.dumps(doc))
    with pytest.raises(SemanticError):
        load_cube(str(p))


def test_morphism_file(tmp_path):
    m = load_morphism(data_path("morphism_h3_ab.json"))
    assert m.map.rows == 2 and m.map.cols == 3
    assert m.is_surjective()
    text = serialize_morphism("h3.json", "abelian_2.json", m)
    with open(data_path("morphism_h3_ab.json"), encoding="utf-8") as fh:
        assert text == fh.read()


def test_malformed_json_is_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    with pytest.raises(ParseError):
        load_algebra(str(p))
    with pytest.raises(ParseError):
        load_algebra(str(tmp_path / "missing.json"))
