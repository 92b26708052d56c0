"""Reduction of an initialized net/statechart pair into a hierarchy.

Two rewrite rules shrink the Petri net while growing the statechart's
containment tree: the AND rule collapses places that share identical
pre- and post-transition sets into a parallel composition, and the OR
rule collapses place-transition-place sequences by merging their OR
states. A driver applies both as long as possible, then wraps the single
surviving top-level OR in a Statechart with an AND top state and assigns
every hyperedge to the nearest compound state containing all Basics it
connects.

Wherever the rules need "the first" element of an unordered collection,
the minimum element id is used, so runs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Callable, Union

from .init import TraceMap, initialize_statechart
from .model import ElementKind, ModelStore


class ReductionError(Exception):
    """The reduction pipeline was driven from an illegal state."""


class Side(Enum):
    PRE = "prep"
    POST = "postp"


class ReductionStatus(Enum):
    SUCCESS = "Success"
    IRREDUCIBLE = "Irreducible"


@dataclass(frozen=True)
class ReductionResult:
    status: ReductionStatus
    statechart_root: int | None
    remaining_places: int
    remaining_transitions: int
    top_or_count: int

    @property
    def ok(self) -> bool:
        return self.status is ReductionStatus.SUCCESS


@dataclass(frozen=True)
class AndFiring:
    """One AND-rule application: ``merged_places`` places became parallel."""

    transition: int
    side: Side
    merged_places: int


@dataclass(frozen=True)
class OrFiring:
    """One OR-rule application; ``identity`` marks a collapsed self-loop."""

    transition: int
    identity: bool


Firing = Union[AndFiring, OrFiring]
FiringObserver = Callable[[Firing], None]

_PLACE = ElementKind.PLACE
_TRANSITION = ElementKind.TRANSITION
_OR = ElementKind.OR
_AND = ElementKind.AND
_HYPER_EDGE = ElementKind.HYPER_EDGE
_STATECHART = ElementKind.STATECHART


def pret(pn: ModelStore, place: int) -> frozenset[int]:
    """The place's pre-transitions as a set."""
    return pn.refs_as_set(place, "pret")


def postt(pn: ModelStore, place: int) -> frozenset[int]:
    """The place's post-transitions as a set."""
    return pn.refs_as_set(place, "postt")


def prep(pn: ModelStore, transition: int) -> frozenset[int]:
    """The transition's pre-places as a set."""
    return pn.refs_as_set(transition, "prep")


def postp(pn: ModelStore, transition: int) -> frozenset[int]:
    """The transition's post-places as a set."""
    return pn.refs_as_set(transition, "postp")


def and_rule(
    pn: ModelStore,
    sc: ModelStore,
    side: Side,
    trace: TraceMap,
    on_fire: FiringObserver | None = None,
) -> bool:
    """One pass of the AND rule over a snapshot of all transitions.

    A transition matches on the chosen side when it has more than one
    pre-place (POST: post-place) and all of them share identical pre- and
    post-transition sets. The minimum-id place survives; the others are
    deleted after their OR states are grouped under a fresh AND inside a
    fresh OR, which becomes the survivor's mapped OR.

    Returns True iff at least one transition matched.
    """
    applied = False
    for transition in pn.all_of_kind(_TRANSITION):
        if not pn.is_live(transition):
            continue
        companions = pn.refs(transition, side.value)
        if len(companions) <= 1:
            continue
        ordered = sorted(companions)
        survivor = ordered[0]
        pre_set = pret(pn, survivor)
        post_set = postt(pn, survivor)
        if not all(
            pret(pn, other) == pre_set and postt(pn, other) == post_set
            for other in ordered[1:]
        ):
            continue
        new_or = sc.create(_OR)
        new_and = sc.create(_AND)
        for place in ordered:
            sc.add_ref(new_and, "contains", trace.or_for(place))
        sc.add_ref(new_or, "contains", new_and)
        trace.place_to_or[survivor] = new_or
        for other in ordered[1:]:
            pn.delete(other)
        applied = True
        if on_fire is not None:
            on_fire(AndFiring(transition, side, len(ordered)))
    return applied


def or_rule(
    pn: ModelStore,
    sc: ModelStore,
    trace: TraceMap,
    on_fire: FiringObserver | None = None,
) -> bool:
    """One pass of the OR rule over a snapshot of all transitions.

    A transition with exactly one pre-place q and one post-place r matches
    when q and r are the same place, or when r is neither a co-output of
    one of q's producing transitions nor a co-input of one of q's
    consuming transitions. On a match with q != r, q absorbs r's arcs and
    r's OR is merged into q's OR before r disappears; either way the
    transition is deleted.

    Returns True iff at least one transition matched.
    """
    applied = False
    for transition in pn.all_of_kind(_TRANSITION):
        if not pn.is_live(transition):
            continue
        preps = pn.refs(transition, "prep")
        if len(preps) != 1:
            continue
        postps = pn.refs(transition, "postp")
        if len(postps) != 1:
            continue
        q = preps[0]
        r = postps[0]
        if q != r:
            if any(r in postp(pn, producer) for producer in pn.refs(q, "pret")):
                continue
            if any(r in prep(pn, consumer) for consumer in pn.refs(q, "postt")):
                continue
        merger = trace.or_for(q)
        mergee = trace.or_for(r)
        if q != r:
            for producer in pn.refs(r, "pret"):
                pn.add_ref(q, "pret", producer)
            for consumer in pn.refs(r, "postt"):
                pn.add_ref(q, "postt", consumer)
            pn.delete(r)
            # adding to the merger steals each child from the mergee, so
            # iterate over a copy
            for child in sc.refs(mergee, "contains"):
                sc.add_ref(merger, "contains", child)
            sc.delete(mergee)
        pn.delete(transition)
        applied = True
        if on_fire is not None:
            on_fire(OrFiring(transition, identity=q == r))
    return applied


def fixpoint(
    pn: ModelStore,
    sc: ModelStore,
    trace: TraceMap,
    on_fire: FiringObserver | None = None,
) -> None:
    """Apply [AND on pre-places, AND on post-places, OR] rounds until none
    of the three passes fires. Terminates because every firing strictly
    shrinks the net."""
    while True:
        fired = and_rule(pn, sc, Side.PRE, trace, on_fire)
        fired = and_rule(pn, sc, Side.POST, trace, on_fire) or fired
        fired = or_rule(pn, sc, trace, on_fire) or fired
        if not fired:
            return


def create_top(pn: ModelStore, sc: ModelStore) -> ReductionResult:
    """Wrap the unique container-less OR in a Statechart with an AND top.

    With exactly one top-level OR the result is Success and the Statechart
    element id is returned; otherwise the statechart model is left alone
    and an Irreducible result reports what is left over.
    """
    top_ors = [
        or_state
        for or_state in sc.all_of_kind(_OR)
        if sc.ref(or_state, "rcontains") is None
    ]
    remaining_places = pn.count_of_kind(_PLACE)
    remaining_transitions = pn.count_of_kind(_TRANSITION)
    if len(top_ors) != 1:
        return ReductionResult(
            ReductionStatus.IRREDUCIBLE,
            None,
            remaining_places,
            remaining_transitions,
            len(top_ors),
        )
    root = sc.create(_STATECHART)
    top = sc.create(_AND)
    sc.set_ref(root, "topState", top)
    sc.add_ref(top, "contains", top_ors[0])
    return ReductionResult(
        ReductionStatus.SUCCESS,
        root,
        remaining_places,
        remaining_transitions,
        1,
    )


def _ancestor_chain(sc: ModelStore, element: int) -> list[int]:
    chain = []
    node = sc.ref(element, "rcontains")
    while node is not None:
        chain.append(node)
        node = sc.ref(node, "rcontains")
    return chain


def assign_hyperedges(sc: ModelStore) -> None:
    """Contain every hyperedge in the nearest compound state that is an
    ancestor of all Basics on its next and rnext links.

    Hyperedges connected to nothing go directly into the top AND state.
    Requires a successfully created top state.
    """
    statecharts = sc.all_of_kind(_STATECHART)
    if len(statecharts) != 1:
        raise ReductionError(
            f"hyperedge assignment needs exactly one Statechart, "
            f"found {len(statecharts)}"
        )
    top = sc.ref(statecharts[0], "topState")
    if top is None:
        raise ReductionError("Statechart has no top state")
    for edge in sc.all_of_kind(_HYPER_EDGE):
        members = sc.refs_as_set(edge, "next") | sc.refs_as_set(edge, "rnext")
        if not members:
            sc.set_ref(edge, "rcontains", top)
            continue
        anchor = min(members)
        others = [
            frozenset(_ancestor_chain(sc, member))
            for member in members
            if member != anchor
        ]
        for candidate in _ancestor_chain(sc, anchor):
            if all(candidate in ancestors for ancestors in others):
                sc.set_ref(edge, "rcontains", candidate)
                break
        else:
            raise ReductionError(
                f"no common ancestor for hyperedge {edge}; "
                f"containment is not a single tree"
            )


def create_statechart(
    pn: ModelStore, on_fire: FiringObserver | None = None
) -> tuple[ModelStore, ReductionResult]:
    """Full pipeline: initialize, reduce to fixpoint, create the top state,
    and (on success) assign hyperedge containers."""
    sc, trace = initialize_statechart(pn)
    fixpoint(pn, sc, trace, on_fire)
    result = create_top(pn, sc)
    if result.ok:
        assign_hyperedges(sc)
    return sc, result
