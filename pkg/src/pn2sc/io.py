"""JSON documents for Petri nets and statecharts.

Petri net files::

    {
      "places": [{"id": "p0", "name": "p0"}, ...],
      "transitions": [{"id": "t0", "name": "t0",
                       "pre": ["p0"], "post": ["p1"]}, ...]
    }

Statechart files hold the containment tree under "root" plus a per-kind
tally. Every node has "uid", "kind", "name" and "children"; Basic and
HyperEdge nodes additionally carry "next", the uids of their successors
(hyperedges for a Basic, Basics for a HyperEdge). Each link is stored
once, on its source node; the rnext slots are the derived opposites and
are not stored::

    {
      "root": {"uid": 0, "kind": "Statechart", "name": "", "children": [...]},
      "counts": {"statechart": 1, "and": 1, "or": 1, "basic": 2,
                 "hyperedge": 1}
    }

Writing is canonical: children are sorted by (kind, name, uid), uids are
assigned in preorder over the sorted tree, next lists are ascending, and
the encoder settings are fixed, so equal models produce identical bytes.
Readers accept any well-formed document but reject unknown fields.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .model import ElementKind, ModelStore
from .reduce import ReductionResult

__all__ = [
    "DocumentError",
    "PlaceSpec",
    "TransitionSpec",
    "PetriNetDocument",
    "ScNode",
    "StatechartDocument",
    "parse_petri_net",
    "store_from_petri_net",
    "read_petri_net",
    "petri_net_to_bytes",
    "document_from_statechart",
    "statechart_document_to_bytes",
    "write_statechart",
    "parse_statechart",
    "store_from_statechart",
    "read_statechart",
]


class DocumentError(ValueError):
    """A document failed to parse or violated its schema."""


# --- Petri net documents ---------------------------------------------------


@dataclass(frozen=True)
class PlaceSpec:
    id: str
    name: str


@dataclass(frozen=True)
class TransitionSpec:
    id: str
    name: str
    pre: tuple[str, ...]
    post: tuple[str, ...]


@dataclass(frozen=True)
class PetriNetDocument:
    places: tuple[PlaceSpec, ...]
    transitions: tuple[TransitionSpec, ...]


def _decode(data: bytes | str) -> object:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise DocumentError(f"not valid UTF-8: {exc}") from None
    try:
        return json.loads(data)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"JSON parse error at line {exc.lineno} column {exc.colno}: "
            f"{exc.msg}"
        ) from None


def _expect_object(value: object, what: str, keys: tuple[str, ...]) -> dict:
    if not isinstance(value, dict):
        raise DocumentError(f"{what} must be an object")
    unknown = set(value) - set(keys)
    if unknown:
        raise DocumentError(f"{what} has unknown fields: {sorted(unknown)}")
    missing = [k for k in keys if k not in value]
    if missing:
        raise DocumentError(f"{what} is missing fields: {missing}")
    return value


def _expect_str(value: object, what: str) -> str:
    if not isinstance(value, str):
        raise DocumentError(f"{what} must be a string")
    return value


def _expect_str_list(value: object, what: str) -> tuple[str, ...]:
    if not isinstance(value, list):
        raise DocumentError(f"{what} must be a list")
    return tuple(_expect_str(item, f"entry of {what}") for item in value)


def parse_petri_net(data: bytes | str) -> PetriNetDocument:
    """Parse and schema-check a Petri net document."""
    raw = _expect_object(_decode(data), "document", ("places", "transitions"))
    if not isinstance(raw["places"], list) or not isinstance(
        raw["transitions"], list
    ):
        raise DocumentError("'places' and 'transitions' must be lists")
    seen_ids: set[str] = set()

    def claim(eid: str) -> str:
        if eid in seen_ids:
            raise DocumentError(f"duplicate id {eid!r}")
        seen_ids.add(eid)
        return eid

    places = tuple(
        PlaceSpec(
            claim(_expect_str(entry["id"], "place id")),
            _expect_str(entry["name"], "place name"),
        )
        for entry in (
            _expect_object(item, "place", ("id", "name"))
            for item in raw["places"]
        )
    )
    place_ids = {p.id for p in places}

    def resolve(pid: str, owner: str) -> str:
        if pid not in place_ids:
            raise DocumentError(
                f"transition {owner!r} references unknown place {pid!r}"
            )
        return pid

    transitions = []
    for item in raw["transitions"]:
        entry = _expect_object(item, "transition", ("id", "name", "pre", "post"))
        tid = claim(_expect_str(entry["id"], "transition id"))
        pre = _expect_str_list(entry["pre"], f"pre of {tid!r}")
        post = _expect_str_list(entry["post"], f"post of {tid!r}")
        for bucket, pids in (("pre", pre), ("post", post)):
            if len(set(pids)) != len(pids):
                raise DocumentError(f"duplicate {bucket} entry on {tid!r}")
            for pid in pids:
                resolve(pid, tid)
        transitions.append(
            TransitionSpec(tid, _expect_str(entry["name"], "name"), pre, post)
        )
    return PetriNetDocument(places, tuple(transitions))


def store_from_petri_net(doc: PetriNetDocument) -> ModelStore:
    """Materialize a document: places first, then transitions, then arcs."""
    pn = ModelStore()
    by_doc_id: dict[str, int] = {}
    for place in doc.places:
        by_doc_id[place.id] = pn.create(ElementKind.PLACE, place.name)
    for transition in doc.transitions:
        tid = pn.create(ElementKind.TRANSITION, transition.name)
        for pid in transition.pre:
            pn.add_ref(tid, "prep", by_doc_id[pid])
        for pid in transition.post:
            pn.add_ref(tid, "postp", by_doc_id[pid])
    return pn


def read_petri_net(data: bytes | str) -> ModelStore:
    """Parse a Petri net document into a fresh model store."""
    return store_from_petri_net(parse_petri_net(data))


def petri_net_to_bytes(doc: PetriNetDocument) -> bytes:
    payload = {
        "places": [{"id": p.id, "name": p.name} for p in doc.places],
        "transitions": [
            {"id": t.id, "name": t.name, "pre": list(t.pre),
             "post": list(t.post)}
            for t in doc.transitions
        ],
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


# --- Statechart documents ----------------------------------------------------


@dataclass(frozen=True)
class ScNode:
    uid: int
    kind: str
    name: str
    children: tuple["ScNode", ...] = ()
    next: tuple[int, ...] = field(default=())


@dataclass(frozen=True)
class StatechartDocument:
    root: ScNode
    counts: dict[str, int]


_COUNT_KEYS = ("statechart", "and", "or", "basic", "hyperedge")
_KIND_TO_COUNT_KEY = {
    ElementKind.STATECHART: "statechart",
    ElementKind.AND: "and",
    ElementKind.OR: "or",
    ElementKind.BASIC: "basic",
    ElementKind.HYPER_EDGE: "hyperedge",
}
_KIND_BY_NAME = {kind.value: kind for kind in _KIND_TO_COUNT_KEY}
_LINKED_KIND_NAMES = (ElementKind.BASIC.value, ElementKind.HYPER_EDGE.value)


def document_from_statechart(sc: ModelStore) -> StatechartDocument:
    """Build the canonical document for a statechart model.

    The model must contain exactly one Statechart element; the tree is the
    containment hierarchy reachable from it, with the top state as the
    Statechart's single child.
    """
    roots = sc.all_of_kind(ElementKind.STATECHART)
    if len(roots) != 1:
        raise DocumentError(
            f"expected exactly one Statechart element, found {len(roots)}"
        )
    top = sc.ref(roots[0], "topState")
    if top is None:
        raise DocumentError("Statechart has no top state")

    def children_of(eid: int) -> list[int]:
        if sc.kind_of(eid) is ElementKind.STATECHART:
            return [top]
        if sc.kind_of(eid) in (ElementKind.OR, ElementKind.AND):
            return sorted(
                sc.refs(eid, "contains"),
                key=lambda c: (sc.kind_of(c).value, sc.name_of(c), c),
            )
        return []

    uids: dict[int, int] = {}

    def number(eid: int) -> None:
        uids[eid] = len(uids)
        for child in children_of(eid):
            number(child)

    number(roots[0])

    counts = dict.fromkeys(_COUNT_KEYS, 0)

    def build(eid: int) -> ScNode:
        kind = sc.kind_of(eid)
        counts[_KIND_TO_COUNT_KEY[kind]] += 1
        nxt = ()
        if kind in (ElementKind.BASIC, ElementKind.HYPER_EDGE):
            try:
                nxt = tuple(sorted(uids[t] for t in sc.refs(eid, "next")))
            except KeyError:
                raise DocumentError(
                    f"element {eid} links outside the containment tree"
                ) from None
        return ScNode(
            uid=uids[eid],
            kind=kind.value,
            name=sc.name_of(eid),
            children=tuple(build(c) for c in children_of(eid)),
            next=nxt,
        )

    return StatechartDocument(build(roots[0]), counts)


def statechart_document_to_bytes(doc: StatechartDocument) -> bytes:
    def encode(node: ScNode) -> dict:
        payload: dict[str, object] = {
            "uid": node.uid,
            "kind": node.kind,
            "name": node.name,
        }
        if node.kind in _LINKED_KIND_NAMES:
            payload["next"] = list(node.next)
        payload["children"] = [encode(c) for c in node.children]
        return payload

    payload = {
        "root": encode(doc.root),
        "counts": {key: doc.counts[key] for key in _COUNT_KEYS},
    }
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


def write_statechart(sc: ModelStore, result: ReductionResult) -> bytes:
    """Serialize a successfully reduced statechart to canonical bytes."""
    if not result.ok:
        raise DocumentError(
            "refusing to serialize an irreducible result: "
            f"{result.top_or_count} top-level OR states, "
            f"{result.remaining_places} places and "
            f"{result.remaining_transitions} transitions remain"
        )
    return statechart_document_to_bytes(document_from_statechart(sc))


def parse_statechart(data: bytes | str) -> StatechartDocument:
    """Parse and schema-check a statechart document."""
    raw = _expect_object(_decode(data), "document", ("root", "counts"))
    counts_raw = _expect_object(raw["counts"], "counts", _COUNT_KEYS)
    counts = {}
    for key in _COUNT_KEYS:
        value = counts_raw[key]
        if not isinstance(value, int) or isinstance(value, bool):
            raise DocumentError(f"count {key!r} must be an integer")
        counts[key] = value

    seen_uids: set[int] = set()
    tally = dict.fromkeys(_COUNT_KEYS, 0)
    uid_kinds: dict[int, ElementKind] = {}
    pending_next: list[tuple[int, ElementKind, tuple[int, ...]]] = []

    def parse_node(value: object, at_root: bool) -> ScNode:
        keys = ("uid", "kind", "name", "children")
        if isinstance(value, dict) and value.get("kind") in _LINKED_KIND_NAMES:
            keys = ("uid", "kind", "name", "next", "children")
        node = _expect_object(value, "node", keys)
        uid = node["uid"]
        if not isinstance(uid, int) or isinstance(uid, bool) or uid < 0:
            raise DocumentError("node uid must be a non-negative integer")
        if uid in seen_uids:
            raise DocumentError(f"duplicate uid {uid}")
        seen_uids.add(uid)
        kind_name = _expect_str(node["kind"], "node kind")
        kind = _KIND_BY_NAME.get(kind_name)
        if kind is None:
            raise DocumentError(f"unknown kind {kind_name!r}")
        if (kind is ElementKind.STATECHART) != at_root:
            raise DocumentError(
                "Statechart must appear exactly at the document root"
            )
        name = _expect_str(node["name"], "node name")
        raw_children = node["children"]
        if not isinstance(raw_children, list):
            raise DocumentError("children must be a list")
        nxt: tuple[int, ...] = ()
        if kind_name in _LINKED_KIND_NAMES:
            raw_next = node["next"]
            if not isinstance(raw_next, list) or not all(
                isinstance(u, int) and not isinstance(u, bool)
                for u in raw_next
            ):
                raise DocumentError("next must be a list of uids")
            nxt = tuple(raw_next)
            pending_next.append((uid, kind, nxt))
            if raw_children:
                raise DocumentError(f"{kind_name} nodes cannot have children")
        children = tuple(parse_node(c, at_root=False) for c in raw_children)
        if kind is ElementKind.STATECHART:
            if len(children) != 1 or children[0].kind != "AND":
                raise DocumentError(
                    "Statechart must have exactly one AND child (its top "
                    "state)"
                )
        uid_kinds[uid] = kind
        tally[_KIND_TO_COUNT_KEY[kind]] += 1
        return ScNode(uid, kind_name, name, children, nxt)

    root = parse_node(raw["root"], at_root=True)
    for owner, owner_kind, targets in pending_next:
        want = (
            ElementKind.BASIC
            if owner_kind is ElementKind.HYPER_EDGE
            else ElementKind.HYPER_EDGE
        )
        for uid in targets:
            if uid_kinds.get(uid) is not want:
                raise DocumentError(
                    f"{owner_kind.value} {owner} links to uid {uid}, "
                    f"which is not a {want.value} in the tree"
                )
    if tally != counts:
        raise DocumentError(
            f"counts object {counts} does not match the tree {tally}"
        )
    return StatechartDocument(root, counts)


def store_from_statechart(doc: StatechartDocument) -> ModelStore:
    """Materialize a statechart document as a model store."""
    sc = ModelStore()
    by_uid: dict[int, int] = {}
    linked: list[tuple[int, tuple[int, ...]]] = []

    def build(node: ScNode, container: int | None) -> None:
        eid = sc.create(_KIND_BY_NAME[node.kind], node.name)
        by_uid[node.uid] = eid
        if container is not None:
            if sc.kind_of(container) is ElementKind.STATECHART:
                sc.set_ref(container, "topState", eid)
            else:
                sc.add_ref(container, "contains", eid)
        if node.kind in _LINKED_KIND_NAMES:
            linked.append((eid, node.next))
        for child in node.children:
            build(child, eid)

    build(doc.root, None)
    for eid, targets in linked:
        for uid in targets:
            sc.add_ref(eid, "next", by_uid[uid])
    return sc


def read_statechart(data: bytes | str) -> ModelStore:
    """Parse a statechart document into a fresh model store."""
    return store_from_statechart(parse_statechart(data))
