"""Deterministic benchmark nets and hand-checked fixture nets.

Benchmark nets are series-parallel by construction: starting from a single
place, a randomly chosen place is repeatedly expanded either into a
sequence (place, transition, fresh place) or into a parallel block (fork
transition, k fresh branch places, join transition, fresh tail place)
until the requested size is reached. Sequences are undone by the OR rule
and parallel blocks by the AND rule, so every generated net reduces to a
single top-level OR.

Randomness comes from SplitMix64 so any implementation can reproduce the
corpus bit for bit. State update and output mixing use the constants

    GAMMA = 0x9E3779B97F4A7C15
    MIX1  = 0xBF58476D1CE4E5B9   (after x ^= x >> 30)
    MIX2  = 0x94D049BB133111EB   (after x ^= x >> 27)

with a final ``x ^= x >> 31``, all modulo 2**64. Bounded draws take the
64-bit output modulo the bound.
"""

from __future__ import annotations

from dataclasses import dataclass

from .io import (
    PetriNetDocument,
    PlaceSpec,
    ScNode,
    StatechartDocument,
    TransitionSpec,
)

_MASK = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB


class SplitMix64:
    """Tiny portable PRNG with 64-bit state."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK
        x = self._state
        x = ((x ^ (x >> 30)) * _MIX1) & _MASK
        x = ((x ^ (x >> 27)) * _MIX2) & _MASK
        return x ^ (x >> 31)

    def below(self, bound: int) -> int:
        return self.next_u64() % bound

    def chance(self, probability: float) -> bool:
        return self.next_u64() < int(probability * (1 << 64))


@dataclass(frozen=True)
class GenSpec:
    """Parameters for one synthetic net.

    The generator stops expanding once the place count reaches
    ``target_places``, so the output overshoots by at most
    ``branch_factor_max`` places.
    """

    target_places: int
    seed: int
    branch_factor_max: int = 4
    parallel_prob: float = 0.5

    def __post_init__(self) -> None:
        if self.target_places < 1:
            raise ValueError("target_places must be at least 1")
        if self.branch_factor_max < 2:
            raise ValueError("branch_factor_max must be at least 2")
        if not 0.0 <= self.parallel_prob <= 1.0:
            raise ValueError("parallel_prob must lie in [0, 1]")

    def file_name(self) -> str:
        return f"sp{self.target_places}_{self.seed}.json"


def generate_sp_net(spec: GenSpec) -> PetriNetDocument:
    """Generate a fully reducible series-parallel net of roughly
    ``target_places`` places."""
    rng = SplitMix64(spec.seed)
    # transition index -> (pre place indices, post place indices); places are
    # implicit in the counter, with out[i] = consuming transitions of place i.
    t_pre: list[list[int]] = []
    t_post: list[list[int]] = []
    out: list[list[int]] = [[]]
    n_places = 1

    def new_place() -> int:
        nonlocal n_places
        out.append([])
        n_places += 1
        return n_places - 1

    def new_transition(pre: list[int], post: list[int]) -> int:
        t_pre.append(pre)
        t_post.append(post)
        tid = len(t_pre) - 1
        for p in pre:
            out[p].append(tid)
        return tid

    def move_outputs(src: int, dst: int) -> None:
        for tid in out[src]:
            t_pre[tid][t_pre[tid].index(src)] = dst
        out[dst].extend(out[src])
        out[src] = []

    while n_places < spec.target_places:
        place = rng.below(n_places)
        if rng.chance(spec.parallel_prob):
            width = 2 + rng.below(spec.branch_factor_max - 1)
            branches = [new_place() for _ in range(width)]
            tail = new_place()
            move_outputs(place, tail)
            new_transition([place], branches)
            new_transition(branches, [tail])
        else:
            tail = new_place()
            move_outputs(place, tail)
            new_transition([place], [tail])

    places = tuple(
        PlaceSpec(f"p{i}", f"p{i}") for i in range(n_places)
    )
    transitions = tuple(
        TransitionSpec(
            f"t{i}",
            f"t{i}",
            tuple(f"p{p}" for p in t_pre[i]),
            tuple(f"p{p}" for p in t_post[i]),
        )
        for i in range(len(t_pre))
    )
    return PetriNetDocument(places, transitions)


# --- hand-checked fixtures ----------------------------------------------------


@dataclass(frozen=True)
class Fixture:
    """A small net paired with its hand-derived expected statechart, or
    with ``expected=None`` when the net must come out irreducible."""

    name: str
    net: PetriNetDocument
    expected: StatechartDocument | None


def _net(places: list[str], transitions: list[tuple[str, list[str], list[str]]]):
    return PetriNetDocument(
        tuple(PlaceSpec(p, p) for p in places),
        tuple(
            TransitionSpec(t, t, tuple(pre), tuple(post))
            for t, pre, post in transitions
        ),
    )


def _doc(root: ScNode) -> StatechartDocument:
    counts = {"statechart": 0, "and": 0, "or": 0, "basic": 0, "hyperedge": 0}
    key = {
        "Statechart": "statechart",
        "AND": "and",
        "OR": "or",
        "Basic": "basic",
        "HyperEdge": "hyperedge",
    }

    def walk(node: ScNode) -> None:
        counts[key[node.kind]] += 1
        for child in node.children:
            walk(child)

    walk(root)
    return StatechartDocument(root, counts)


def _chain_fixture() -> Fixture:
    net = _net(["P1", "P2"], [("T1", ["P1"], ["P2"])])
    expected = _doc(
        ScNode(0, "Statechart", "", (
            ScNode(1, "AND", "", (
                ScNode(2, "OR", "", (
                    ScNode(3, "Basic", "P1", (), (5,)),
                    ScNode(4, "Basic", "P2", (), ()),
                    ScNode(5, "HyperEdge", "T1", (), (4,)),
                )),
            )),
        ))
    )
    return Fixture("chain", net, expected)


def _self_loop_fixture() -> Fixture:
    net = _net(["P"], [("T", ["P"], ["P"])])
    expected = _doc(
        ScNode(0, "Statechart", "", (
            ScNode(1, "AND", "", (
                ScNode(2, "OR", "", (
                    ScNode(3, "Basic", "P", (), (4,)),
                    ScNode(4, "HyperEdge", "T", (), (3,)),
                )),
            )),
        ))
    )
    return Fixture("self_loop", net, expected)


def _fork_join_fixture() -> Fixture:
    net = _net(
        ["P0", "P1", "P2", "P3"],
        [("T1", ["P0"], ["P1", "P2"]), ("T2", ["P1", "P2"], ["P3"])],
    )
    expected = _doc(
        ScNode(0, "Statechart", "", (
            ScNode(1, "AND", "", (
                ScNode(2, "OR", "", (
                    ScNode(3, "AND", "", (
                        ScNode(4, "OR", "", (
                            ScNode(5, "Basic", "P1", (), (11,)),
                        )),
                        ScNode(6, "OR", "", (
                            ScNode(7, "Basic", "P2", (), (11,)),
                        )),
                    )),
                    ScNode(8, "Basic", "P0", (), (10,)),
                    ScNode(9, "Basic", "P3", (), ()),
                    ScNode(10, "HyperEdge", "T1", (), (5, 7)),
                    ScNode(11, "HyperEdge", "T2", (), (9,)),
                )),
            )),
        ))
    )
    return Fixture("fork_join", net, expected)


def _double_arc_fixture() -> Fixture:
    # two transitions running between the same pair of places; the first
    # sequence merge turns the second transition into a self-loop, which
    # then collapses on its own
    net = _net(
        ["Q", "R"],
        [("T1", ["Q"], ["R"]), ("T2", ["Q"], ["R"])],
    )
    expected = _doc(
        ScNode(0, "Statechart", "", (
            ScNode(1, "AND", "", (
                ScNode(2, "OR", "", (
                    ScNode(3, "Basic", "Q", (), (5, 6)),
                    ScNode(4, "Basic", "R", (), ()),
                    ScNode(5, "HyperEdge", "T1", (), (4,)),
                    ScNode(6, "HyperEdge", "T2", (), (4,)),
                )),
            )),
        ))
    )
    return Fixture("double_arc", net, expected)


def _isolated_places_fixture() -> Fixture:
    return Fixture("two_isolated_places", _net(["P1", "P2"], []), None)


def generate_known_corpus() -> list[Fixture]:
    """The fixed fixture nets with hand-derived expected outcomes."""
    return [
        _chain_fixture(),
        _self_loop_fixture(),
        _fork_join_fixture(),
        _double_arc_fixture(),
        _isolated_places_fixture(),
    ]
