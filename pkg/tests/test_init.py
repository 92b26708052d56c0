from __future__ import annotations

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import build_net, kind_counts
from pn2sc.init import (
    initialize_statechart,
    rule_place2basic_and_or,
    rule_transition2hyperedge,
)
from pn2sc.model import ElementKind


def test_chain_place_rule_wiring():
    pn, ids = build_net(
        ["P1", "P2"], [("T1", ["P1"], ["P2"])]
    )
    sc, trace = initialize_statechart(pn)
    o1 = trace.place_to_or[ids["P1"]]
    b1 = trace.place_to_basic[ids["P1"]]
    edge = trace.transition_to_hyperedge[ids["T1"]]
    assert sc.kind_of(o1) is ElementKind.OR
    assert sc.name_of(b1) == "P1"
    assert sc.refs(o1, "contains") == (b1,)
    assert sc.refs_as_set(b1, "next") == {edge}
    assert sc.refs_as_set(b1, "rnext") == frozenset()
    # the other side of the arc
    b2 = trace.place_to_basic[ids["P2"]]
    assert sc.refs_as_set(edge, "next") == {b2}
    assert sc.refs_as_set(edge, "rnext") == {b1}


def test_isolated_place_has_no_links():
    pn, ids = build_net(["P"], [])
    sc, trace = initialize_statechart(pn)
    basic = trace.place_to_basic[ids["P"]]
    assert sc.refs(basic, "next") == ()
    assert sc.refs(basic, "rnext") == ()


def test_place_rule_memoized():
    pn, ids = build_net(["P1", "P2"], [("T1", ["P1"], ["P2"])])
    sc, trace = initialize_statechart(pn)
    before = kind_counts(sc)
    pair = rule_place2basic_and_or(pn, sc, trace, ids["P1"])
    assert pair == (trace.place_to_or[ids["P1"]], trace.place_to_basic[ids["P1"]])
    assert kind_counts(sc) == before


def test_transition_rule_memoized_across_places():
    # the hyperedge is demanded once per adjacent place but created once
    pn, ids = build_net(
        ["P1", "P2"], [("T1", ["P1"], ["P2"])]
    )
    sc, trace = initialize_statechart(pn)
    assert sc.count_of_kind(ElementKind.HYPER_EDGE) == 1
    edge = rule_transition2hyperedge(pn, sc, trace, ids["T1"])
    assert edge == trace.transition_to_hyperedge[ids["T1"]]
    assert sc.count_of_kind(ElementKind.HYPER_EDGE) == 1


def test_hyperedge_named_after_transition():
    pn, ids = build_net(["P"], [("t1", ["P"], [])])
    sc, trace = initialize_statechart(pn)
    edge = trace.transition_to_hyperedge[ids["t1"]]
    assert sc.name_of(edge) == "t1"
    assert sc.kind_of(edge) is ElementKind.HYPER_EDGE


def test_empty_net():
    pn, _ = build_net([], [])
    sc, trace = initialize_statechart(pn)
    assert kind_counts(sc) == {kind.value: 0 for kind in ElementKind}
    assert not trace.place_to_or
    assert not trace.transition_to_hyperedge


def test_fork_wiring():
    pn, ids = build_net(
        ["P0", "P1", "P2"], [("T1", ["P0"], ["P1", "P2"])]
    )
    sc, trace = initialize_statechart(pn)
    edge = trace.transition_to_hyperedge[ids["T1"]]
    expected = {trace.place_to_basic[ids["P1"]], trace.place_to_basic[ids["P2"]]}
    assert sc.refs_as_set(edge, "next") == expected


def test_isolated_transition_still_gets_hyperedge():
    pn, ids = build_net(["P"], [("T", [], [])])
    sc, trace = initialize_statechart(pn)
    edge = trace.transition_to_hyperedge[ids["T"]]
    assert sc.refs(edge, "next") == ()
    assert sc.refs(edge, "rnext") == ()


@st.composite
def random_nets(draw):
    n_places = draw(st.integers(0, 6))
    n_transitions = draw(st.integers(0, 6))
    place_names = [f"p{i}" for i in range(n_places)]
    transitions = []
    for i in range(n_transitions):
        pre = draw(st.sets(st.sampled_from(place_names), max_size=n_places)
                   ) if n_places else set()
        post = draw(st.sets(st.sampled_from(place_names), max_size=n_places)
                    ) if n_places else set()
        transitions.append((f"t{i}", sorted(pre), sorted(post)))
    return place_names, transitions


@given(random_nets())
@settings(max_examples=80)
def test_count_law_and_arc_bijection(net):
    place_names, transition_specs = net
    pn, ids = build_net(place_names, transition_specs)
    sc, trace = initialize_statechart(pn)
    assert sc.count_of_kind(ElementKind.OR) == len(place_names)
    assert sc.count_of_kind(ElementKind.BASIC) == len(place_names)
    assert sc.count_of_kind(ElementKind.HYPER_EDGE) == len(transition_specs)
    # arcs map one-to-one onto next/rnext links
    for tname, pre, post in transition_specs:
        edge = trace.transition_to_hyperedge[ids[tname]]
        assert sc.refs_as_set(edge, "rnext") == {
            trace.place_to_basic[ids[p]] for p in pre
        }
        assert sc.refs_as_set(edge, "next") == {
            trace.place_to_basic[ids[p]] for p in post
        }
    # every Basic sits in exactly one OR and nothing else is contained
    for pname in place_names:
        basic = trace.place_to_basic[ids[pname]]
        or_state = trace.place_to_or[ids[pname]]
        assert sc.ref(basic, "rcontains") == or_state
        assert sc.refs(or_state, "contains") == (basic,)
        assert sc.ref(or_state, "rcontains") is None
    sc.check_invariants()


@given(random_nets())
@settings(max_examples=40)
def test_rerunning_rules_changes_nothing(net):
    place_names, transition_specs = net
    pn, ids = build_net(place_names, transition_specs)
    sc, trace = initialize_statechart(pn)
    before = kind_counts(sc)
    for pname in place_names:
        rule_place2basic_and_or(pn, sc, trace, ids[pname])
    for tname, _, _ in transition_specs:
        rule_transition2hyperedge(pn, sc, trace, ids[tname])
    assert kind_counts(sc) == before
