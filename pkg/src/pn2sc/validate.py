"""Structural comparison of a produced statechart against an expected one.

Two rigor levels: ``Counts`` compares per-kind element totals only, while
``Full`` looks for a containment-tree isomorphism matching kind and name at
every node and, under it, equality of every hyperedge's next and rnext
sets. Trees are compared through canonical forms (children sorted by a
recursively computed key), so duplicate names are handled without a
backtracking search; genuinely indistinguishable siblings may be matched
either way.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .model import ElementKind, ModelStore

_COMPARED_KINDS = (
    ElementKind.STATECHART,
    ElementKind.AND,
    ElementKind.OR,
    ElementKind.BASIC,
    ElementKind.HYPER_EDGE,
)


class ValidationLevel(Enum):
    COUNTS = "Counts"
    FULL = "Full"


@dataclass(frozen=True)
class Discrepancy:
    kind: str  # count-mismatch | missing-node | extra-node |
    #            wrong-container | next-set-mismatch
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    level: ValidationLevel
    discrepancies: tuple[Discrepancy, ...]

    @property
    def passed(self) -> bool:
        return not self.discrepancies


def validate_counts(actual: ModelStore, expected: ModelStore) -> ValidationReport:
    """Compare per-kind instance totals."""
    found = []
    for kind in _COMPARED_KINDS:
        got = actual.count_of_kind(kind)
        want = expected.count_of_kind(kind)
        if got != want:
            found.append(
                Discrepancy(
                    "count-mismatch",
                    f"{kind.value}: actual {got}, expected {want}",
                )
            )
    return ValidationReport(ValidationLevel.COUNTS, tuple(found))


class _Node:
    __slots__ = ("kind", "name", "children", "path", "next_sig", "rnext_sig",
                 "key")

    def __init__(self, kind: str, name: str):
        self.kind = kind
        self.name = name
        self.children: list[_Node] = []
        self.path: tuple[tuple[str, str], ...] = ()
        self.next_sig: tuple = ()
        self.rnext_sig: tuple = ()
        self.key: tuple = ()

    @property
    def label(self) -> str:
        return f"{self.kind}({self.name})"


def _build_tree(sc: ModelStore) -> _Node:
    roots = sc.all_of_kind(ElementKind.STATECHART)
    if len(roots) != 1:
        raise ValueError(
            f"not a statechart model: {len(roots)} Statechart elements"
        )
    top = sc.ref(roots[0], "topState")
    if top is None:
        raise ValueError("not a statechart model: no top state")

    nodes: dict[int, _Node] = {}

    def build(eid: int, path: tuple[tuple[str, str], ...]) -> _Node:
        kind = sc.kind_of(eid)
        node = _Node(kind.value, sc.name_of(eid))
        node.path = path
        nodes[eid] = node
        if kind is ElementKind.STATECHART:
            child_ids = [top]
        elif kind in (ElementKind.OR, ElementKind.AND):
            child_ids = list(sc.refs(eid, "contains"))
        else:
            child_ids = []
        here = path + ((kind.value, sc.name_of(eid)),)
        node.children = [build(c, here) for c in child_ids]
        return node

    root = build(roots[0], ())

    # hyperedge link signatures use the target's name plus its container
    # path, so same-named Basics in different containers stay distinct
    def target_sig(basic: int) -> tuple:
        node = nodes.get(basic)
        if node is None:
            # linked Basic outside the tree: identify it by name only
            return (sc.name_of(basic), ("<detached>",))
        return (node.name, node.path)

    for eid, node in nodes.items():
        if node.kind != ElementKind.HYPER_EDGE.value:
            continue
        node.next_sig = tuple(
            sorted(target_sig(b) for b in sc.refs(eid, "next"))
        )
        node.rnext_sig = tuple(
            sorted(target_sig(b) for b in sc.refs(eid, "rnext"))
        )

    def canonicalize(node: _Node) -> tuple:
        for child in node.children:
            canonicalize(child)
        node.children.sort(key=lambda c: c.key)
        node.key = (
            node.kind,
            node.name,
            node.next_sig,
            node.rnext_sig,
            tuple(c.key for c in node.children),
        )
        return node.key

    canonicalize(root)
    return root


def _flatten(root: _Node) -> list[_Node]:
    out = [root]
    stack = [root]
    while stack:
        node = stack.pop()
        out.extend(node.children)
        stack.extend(node.children)
    return out


def _fmt_path(path: tuple[tuple[str, str], ...]) -> str:
    if not path:
        return "<root>"
    return "/".join(f"{kind}({name})" for kind, name in path)


def _first_divergence(actual: _Node, expected: _Node,
                      found: list[Discrepancy]) -> None:
    """Descend into canonically unequal subtrees and report the first
    difference on each divergent branch."""
    if actual.key == expected.key:
        return
    if (actual.kind, actual.name) != (expected.kind, expected.name):
        found.append(Discrepancy(
            "missing-node",
            f"expected {expected.label} under {_fmt_path(expected.path)}, "
            f"found {actual.label}",
        ))
        return
    if actual.kind == ElementKind.HYPER_EDGE.value and (
        actual.next_sig != expected.next_sig
        or actual.rnext_sig != expected.rnext_sig
    ):
        found.append(Discrepancy(
            "next-set-mismatch",
            f"{actual.label} under {_fmt_path(actual.path)} links different "
            f"Basics than expected",
        ))
        return
    by_key_a = Counter(c.key for c in actual.children)
    by_key_e = Counter(c.key for c in expected.children)
    # pair off children with identical canonical keys, then match the rest
    # by (kind, name) and recurse into those pairs
    surplus_a = []
    budget = dict(by_key_e)
    for child in actual.children:
        if budget.get(child.key, 0) > 0:
            budget[child.key] -= 1
        else:
            surplus_a.append(child)
    surplus_e = []
    budget = dict(by_key_a)
    for child in expected.children:
        if budget.get(child.key, 0) > 0:
            budget[child.key] -= 1
        else:
            surplus_e.append(child)
    for child_a in list(surplus_a):
        partner = next(
            (c for c in surplus_e
             if (c.kind, c.name) == (child_a.kind, child_a.name)),
            None,
        )
        if partner is not None:
            surplus_a.remove(child_a)
            surplus_e.remove(partner)
            _first_divergence(child_a, partner, found)
    for child in surplus_e:
        found.append(Discrepancy(
            "missing-node",
            f"{child.label} missing under {_fmt_path(expected.path)}"
            f"/{expected.label}",
        ))
    for child in surplus_a:
        found.append(Discrepancy(
            "extra-node",
            f"unexpected {child.label} under {_fmt_path(actual.path)}"
            f"/{actual.label}",
        ))


def validate_full(actual: ModelStore, expected: ModelStore) -> ValidationReport:
    """Compare containment trees and hyperedge link sets."""
    tree_a = _build_tree(actual)
    tree_e = _build_tree(expected)
    found: list[Discrepancy] = []

    all_a = _flatten(tree_a)
    all_e = _flatten(tree_e)
    names_a = Counter((n.kind, n.name) for n in all_a)
    names_e = Counter((n.kind, n.name) for n in all_e)
    for (kind, name), want in sorted(names_e.items()):
        got = names_a.get((kind, name), 0)
        if got < want:
            found.append(Discrepancy(
                "missing-node", f"{kind}({name}): {want - got} occurrence(s) "
                f"missing",
            ))
    for (kind, name), got in sorted(names_a.items()):
        want = names_e.get((kind, name), 0)
        if got > want:
            found.append(Discrepancy(
                "extra-node", f"{kind}({name}): {got - want} unexpected "
                f"occurrence(s)",
            ))

    group_a: dict[tuple[str, str], list[_Node]] = {}
    for node in all_a:
        group_a.setdefault((node.kind, node.name), []).append(node)
    group_e: dict[tuple[str, str], list[_Node]] = {}
    for node in all_e:
        group_e.setdefault((node.kind, node.name), []).append(node)

    for label in sorted(set(group_a) & set(group_e)):
        nodes_a = group_a[label]
        nodes_e = group_e[label]
        if len(nodes_a) != len(nodes_e):
            continue  # already reported as missing/extra
        paths_a = sorted(n.path for n in nodes_a)
        paths_e = sorted(n.path for n in nodes_e)
        if paths_a != paths_e:
            found.append(Discrepancy(
                "wrong-container",
                f"{label[0]}({label[1]}) contained under "
                f"{_fmt_path(paths_a[0])}, expected "
                f"{_fmt_path(paths_e[0])}",
            ))
            continue
        if label[0] == ElementKind.HYPER_EDGE.value:
            sigs_a = sorted((n.next_sig, n.rnext_sig) for n in nodes_a)
            sigs_e = sorted((n.next_sig, n.rnext_sig) for n in nodes_e)
            if sigs_a != sigs_e:
                found.append(Discrepancy(
                    "next-set-mismatch",
                    f"{label[0]}({label[1]}) links a different set of "
                    f"Basics than expected",
                ))

    if not found and tree_a.key != tree_e.key:
        _first_divergence(tree_a, tree_e, found)
        if not found:  # canonically unequal but not localized: be explicit
            found.append(Discrepancy(
                "missing-node", "containment trees differ structurally",
            ))
    return ValidationReport(ValidationLevel.FULL, tuple(found))
