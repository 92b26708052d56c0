from __future__ import annotations

import json

import pytest

from helpers import build_net
from pn2sc import io as scio
from pn2sc.model import ElementKind
from pn2sc.reduce import create_statechart
from pn2sc.validate import validate_full


def test_empty_document_round_trip():
    pn = scio.read_petri_net(b'{"places": [], "transitions": []}')
    assert pn.all_of_kind(ElementKind.PLACE) == []
    assert pn.all_of_kind(ElementKind.TRANSITION) == []


def test_chain_document_wiring():
    data = json.dumps({
        "places": [{"id": "P1", "name": "P1"}, {"id": "P2", "name": "P2"}],
        "transitions": [
            {"id": "T1", "name": "T1", "pre": ["P1"], "post": ["P2"]}
        ],
    })
    pn = scio.read_petri_net(data)
    (t1,) = pn.all_of_kind(ElementKind.TRANSITION)
    p1, p2 = pn.all_of_kind(ElementKind.PLACE)
    assert pn.refs(t1, "prep") == (p1,)
    assert pn.refs(t1, "postp") == (p2,)
    assert pn.name_of(p1) == "P1"


def test_unresolved_place_id_is_named_in_error():
    data = json.dumps({
        "places": [{"id": "P1", "name": "P1"}],
        "transitions": [
            {"id": "T1", "name": "T1", "pre": ["PX"], "post": []}
        ],
    })
    with pytest.raises(scio.DocumentError, match="PX"):
        scio.read_petri_net(data)


def test_duplicate_id_rejected():
    data = json.dumps({
        "places": [{"id": "P1", "name": "a"}, {"id": "P1", "name": "b"}],
        "transitions": [],
    })
    with pytest.raises(scio.DocumentError, match="duplicate"):
        scio.read_petri_net(data)


def test_parse_error_reports_position():
    with pytest.raises(scio.DocumentError, match="line 1"):
        scio.read_petri_net(b'{"places": [,]}')


def test_unknown_fields_rejected():
    data = json.dumps({"places": [], "transitions": [], "extra": 1})
    with pytest.raises(scio.DocumentError, match="unknown"):
        scio.read_petri_net(data)


def _chain_statechart():
    pn, _ = build_net(["P1", "P2"], [("T1", ["P1"], ["P2"])])
    return create_statechart(pn)


def test_write_statechart_counts():
    sc, result = _chain_statechart()
    doc = json.loads(scio.write_statechart(sc, result))
    assert doc["counts"] == {
        "statechart": 1, "and": 1, "or": 1, "basic": 2, "hyperedge": 1
    }


def test_write_is_deterministic():
    first = scio.write_statechart(*_chain_statechart())
    second = scio.write_statechart(*_chain_statechart())
    assert first == second


def test_write_refuses_irreducible_result():
    pn, _ = build_net(["P1", "P2"], [])
    sc, result = create_statechart(pn)
    assert not result.ok
    with pytest.raises(scio.DocumentError, match="irreducible"):
        scio.write_statechart(sc, result)


def test_round_trip_preserves_structure():
    sc, result = _chain_statechart()
    data = scio.write_statechart(sc, result)
    rebuilt = scio.read_statechart(data)
    assert validate_full(rebuilt, sc).passed
    # canonical writing is idempotent across a round trip
    assert scio.statechart_document_to_bytes(
        scio.document_from_statechart(rebuilt)
    ) == data


def test_read_accepts_non_canonical_child_order():
    sc, result = _chain_statechart()
    doc = json.loads(scio.write_statechart(sc, result))
    children = doc["root"]["children"][0]["children"][0]["children"]
    children.reverse()
    rebuilt = scio.read_statechart(json.dumps(doc))
    assert validate_full(rebuilt, sc).passed


def test_malformed_kind_rejected():
    sc, result = _chain_statechart()
    doc = json.loads(scio.write_statechart(sc, result))
    doc["root"]["kind"] = "Sketchchart"
    with pytest.raises(scio.DocumentError, match="kind"):
        scio.read_statechart(json.dumps(doc))


def test_counts_must_match_tree():
    sc, result = _chain_statechart()
    doc = json.loads(scio.write_statechart(sc, result))
    doc["counts"]["basic"] = 5
    with pytest.raises(scio.DocumentError, match="counts"):
        scio.read_statechart(json.dumps(doc))


def test_next_must_point_at_basics():
    sc, result = _chain_statechart()
    doc = json.loads(scio.write_statechart(sc, result))
    inner = doc["root"]["children"][0]["children"][0]["children"]
    edge = next(node for node in inner if node["kind"] == "HyperEdge")
    edge["next"] = [2]  # uid 2 is the OR state
    with pytest.raises(scio.DocumentError, match="not a Basic"):
        scio.read_statechart(json.dumps(doc))


def test_hand_written_expected_document_is_usable():
    text = """
    {
      "counts": {"statechart": 1, "and": 1, "or": 1, "basic": 2,
                 "hyperedge": 1},
      "root": {
        "uid": 7, "kind": "Statechart", "name": "", "children": [
          {"uid": 3, "kind": "AND", "name": "", "children": [
            {"uid": 11, "kind": "OR", "name": "", "children": [
              {"uid": 4, "kind": "HyperEdge", "name": "T1", "next": [1],
               "children": []},
              {"uid": 0, "kind": "Basic", "name": "P1", "next": [4],
               "children": []},
              {"uid": 1, "kind": "Basic", "name": "P2", "next": [],
               "children": []}
            ]}
          ]}
        ]
      }
    }
    """
    expected = scio.read_statechart(text)
    sc, _ = _chain_statechart()
    assert validate_full(sc, expected).passed
