"""Switchings, meta-switchings, and the brute-force soundness criterion.

A meta-switching keeps one edge of every contraction and expansion link and
replaces each ImpI edge pair by either the solid edge (premise to main
conclusion) or the virtual edge (hypothesis to main conclusion). A proof-graph
is an N-Graph iff every induced undirected graph is a tree on all nodes.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Mapping, Optional, Sequence

from .graph import Edge, NodeId, ProofGraph, check_valid
from .links import LinkKind

DEFAULT_MAX_SWITCHABLES = 20
ENV_MAX_SWITCHABLES = "NGRAPH_MAX_SWITCHABLES"


def default_max_switchables() -> int:
    value = os.environ.get(ENV_MAX_SWITCHABLES)
    return int(value) if value else DEFAULT_MAX_SWITCHABLES


class ResourceLimitExceeded(RuntimeError):
    def __init__(self, count: int, bound: int):
        super().__init__(f"{count} switchable links exceed the bound of {bound} "
                         f"(2^{count} meta-switchings); raise --max-switchables to force")
        self.count = count
        self.bound = bound


class Choice(Enum):
    LEFT = "Left"
    RIGHT = "Right"
    DIRECT = "Direct"
    VIRTUAL = "Virtual"


def choices_for(kind: LinkKind) -> tuple[Choice, Choice]:
    if kind is LinkKind.IMP_I:
        return (Choice.DIRECT, Choice.VIRTUAL)
    return (Choice.LEFT, Choice.RIGHT)


@dataclass(frozen=True)
class MetaSwitching:
    """One choice per switchable link, keyed by link index."""

    choices: tuple[tuple[int, Choice], ...]

    @classmethod
    def of(cls, mapping: Mapping[int, Choice]) -> "MetaSwitching":
        return cls(tuple(sorted(mapping.items())))

    def __getitem__(self, link: int) -> Choice:
        for i, c in self.choices:
            if i == link:
                return c
        raise KeyError(link)

    def as_dict(self) -> dict[int, Choice]:
        return dict(self.choices)

    def describe(self, g: ProofGraph) -> str:
        parts = [f"{i}:{g.links[i].kind.value}={c.value}" for i, c in self.choices]
        return ", ".join(parts) or "(no switchable links)"


class Defect(Enum):
    CYCLIC = "Cyclic"
    DISCONNECTED = "Disconnected"


@dataclass(frozen=True)
class Verdict:
    witness: Optional[MetaSwitching] = None
    defect: Optional[Defect] = None

    @property
    def sound(self) -> bool:
        return self.defect is None

    def __str__(self) -> str:
        return "Sound" if self.sound else f"Unsound({self.defect.value})"


SOUND = Verdict()


@dataclass(frozen=True)
class SwitchingGraph:
    """Spanning undirected graph induced by a meta-switching.

    Edges keep their orientation (tail, head) because empire computations
    delete edges by direction; the virtual edge is oriented hypothesis -> main
    conclusion.
    """

    nodes: tuple[NodeId, ...]
    edges: tuple[Edge, ...]

    def adjacency(self) -> dict[NodeId, list[NodeId]]:
        adj: dict[NodeId, list[NodeId]] = {n: [] for n in self.nodes}
        for e in self.edges:
            adj[e.tail].append(e.head)
            adj[e.head].append(e.tail)
        return adj


def _guard(g: ProofGraph, max_switchables: Optional[int]) -> list[int]:
    switchable = g.switchable_links
    bound = default_max_switchables() if max_switchables is None else max_switchables
    if len(switchable) > bound:
        raise ResourceLimitExceeded(len(switchable), bound)
    return switchable


def enumerate_meta_switchings(g: ProofGraph, max_switchables: Optional[int] = None) -> Iterator[MetaSwitching]:
    """All 2^k meta-switchings, first switchable link varying slowest."""
    check_valid(g)
    switchable = _guard(g, max_switchables)
    options = [choices_for(g.links[i].kind) for i in switchable]
    for combo in itertools.product(*options):
        yield MetaSwitching(tuple(zip(switchable, combo)))


def enumerate_switchings(g: ProofGraph, max_switchables: Optional[int] = None) -> Iterator[MetaSwitching]:
    """Plain switchings (contraction and expansion only); defined for ImpI-free graphs."""
    if any(link.kind is LinkKind.IMP_I for link in g.links):
        raise ValueError("plain switchings are only defined for graphs without ImpI links")
    return enumerate_meta_switchings(g, max_switchables)


def kept_edges(g: ProofGraph, i: int, choice: Optional[Choice]) -> list[Edge]:
    link = g.links[i]
    if link.kind is LinkKind.CONTRACTION:
        p = link.premises[0 if choice is Choice.LEFT else 1]
        return [Edge(p, link.conclusions[0], i)]
    if link.kind is LinkKind.EXPANSION:
        c = link.conclusions[0 if choice is Choice.LEFT else 1]
        return [Edge(link.premises[0], c, i)]
    if link.kind is LinkKind.IMP_I:
        if choice is Choice.DIRECT:
            return [Edge(link.premises[0], link.conclusions[0], i)]
        return [Edge(link.hypothesis, link.conclusions[0], i, virtual=True)]
    return [Edge(p, c, i) for p in link.premises for c in link.conclusions]


def switching_graph(g: ProofGraph, s: MetaSwitching) -> SwitchingGraph:
    choice = s.as_dict()
    missing = [i for i in g.switchable_links if i not in choice]
    if missing:
        raise ValueError(f"meta-switching has no choice for links {missing}")
    edges: list[Edge] = []
    for i in range(len(g.links)):
        edges.extend(kept_edges(g, i, choice.get(i)))
    return SwitchingGraph(g.node_ids, tuple(edges))


class _DSU:
    __slots__ = ("parent",)

    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[ra] = rb
        return True


def tree_defect(nodes: Sequence[NodeId], edges: Sequence[Edge]) -> Optional[Defect]:
    """None if the undirected multigraph is a tree; cycles take precedence over disconnection."""
    if not nodes:
        return Defect.DISCONNECTED
    index = {n: i for i, n in enumerate(nodes)}
    dsu = _DSU(len(nodes))
    components = len(nodes)
    for e in edges:
        if not dsu.union(index[e.tail], index[e.head]):
            return Defect.CYCLIC
        components -= 1
    return None if components <= 1 else Defect.DISCONNECTED


def is_ngraph(g: ProofGraph, max_switchables: Optional[int] = None) -> Verdict:
    """Decide the criterion by checking every meta-switching; the first failure wins.

    Fixed (non-switchable) edges are merged once; each switching then only adds
    its k chosen edges between the fixed components.
    """
    check_valid(g)
    switchable = _guard(g, max_switchables)
    if not g.nodes:
        return Verdict(MetaSwitching(()), Defect.DISCONNECTED)
    index = g.index
    fixed = _DSU(len(g.nodes))
    fixed_cycle = False
    components = len(g.nodes)
    for i, link in enumerate(g.links):
        if link.switchable:
            continue
        for e in kept_edges(g, i, None):
            if fixed.union(index[e.tail], index[e.head]):
                components -= 1
            else:
                fixed_cycle = True
    options = [choices_for(g.links[i].kind) for i in switchable]
    if fixed_cycle:
        first = MetaSwitching(tuple((i, opts[0]) for i, opts in zip(switchable, options)))
        return Verdict(first, Defect.CYCLIC)

    roots = sorted({fixed.find(k) for k in range(len(g.nodes))})
    comp_of = {r: j for j, r in enumerate(roots)}
    # per switchable link: the two candidate edges as fixed-component pairs
    candidates = []
    for i, opts in zip(switchable, options):
        pair = []
        for c in opts:
            (e,) = kept_edges(g, i, c)
            pair.append((comp_of[fixed.find(index[e.tail])], comp_of[fixed.find(index[e.head])]))
        candidates.append(pair)

    for combo in itertools.product((0, 1), repeat=len(switchable)):
        dsu = _DSU(components)
        left = components
        defect = None
        for pair, bit in zip(candidates, combo):
            a, b = pair[bit]
            if dsu.union(a, b):
                left -= 1
            else:
                defect = Defect.CYCLIC
                break
        if defect is None and left > 1:
            defect = Defect.DISCONNECTED
        if defect is not None:
            witness = MetaSwitching(tuple((i, opts[bit]) for i, opts, bit in zip(switchable, options, combo)))
            return Verdict(witness, defect)
    return SOUND


def is_ngraph_reference(g: ProofGraph, max_switchables: Optional[int] = None) -> Verdict:
    """Same decision, rebuilding each switching graph from scratch (slow path)."""
    for s in enumerate_meta_switchings(g, max_switchables):
        defect = tree_defect(g.node_ids, switching_graph(g, s).edges)
        if defect is not None:
            return Verdict(s, defect)
    return SOUND
