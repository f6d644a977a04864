"""Corpus builders and property checks shared by unit and acceptance tests.

Each ``check_*`` function returns a list of counterexample descriptions; an
empty list means the property held.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable

import networkx as nx

from ngraph.empires import (EmpireCache, Side, all_empires_by_intersection, empire_by_intersection,
                            principal_switching, s_component)
from ngraph.generate import GeneratorSpec, generate_sound, generate_unsound
from ngraph.graph import NodeId, ProofGraph, conclusions, end_sequent, induced_links, premises, subgraph
from ngraph.links import LinkKind
from ngraph.lk import lk_check
from ngraph.order import NoSplit, PreconditionViolated, find_split, maximal_nodes
from ngraph.sequentialize import Trace, sequentialize
from ngraph.switching import Defect, MetaSwitching, is_ngraph, switching_graph

NORTH, SOUTH = Side.NORTH, Side.SOUTH
CORPUS_SIZE = 1000
NEGATIVE_SIZE = 500
MAX_SWITCHABLES = 12


def corpus_spec(seed: int) -> GeneratorSpec:
    # sizes cycle through 0..20 links so small graphs are well represented
    return GeneratorSpec(seed=seed, max_links=seed % 21, max_switchables=MAX_SWITCHABLES)


@lru_cache(maxsize=None)
def sound_corpus(size: int = CORPUS_SIZE) -> tuple[ProofGraph, ...]:
    return tuple(generate_sound(corpus_spec(seed)) for seed in range(size))


@lru_cache(maxsize=None)
def unsound_corpus(size: int = NEGATIVE_SIZE) -> tuple[ProofGraph, ...]:
    return tuple(generate_unsound(GeneratorSpec(seed=10_000 + seed, max_links=3 + seed % 10,
                                                max_switchables=MAX_SWITCHABLES))
                 for seed in range(size))


# -- independent tree test ------------------------------------------------------

def nx_switching_graph(g: ProofGraph, s: MetaSwitching) -> nx.MultiGraph:
    sg = switching_graph(g, s)
    out = nx.MultiGraph()
    out.add_nodes_from(sg.nodes)
    out.add_edges_from((e.tail, e.head) for e in sg.edges)
    return out


def nx_defect(g: ProofGraph, s: MetaSwitching) -> Defect | None:
    """Defect of one switching graph according to networkx."""
    graph = nx_switching_graph(g, s)
    if graph.number_of_nodes() and nx.is_tree(graph):
        return None
    if graph.number_of_nodes() and nx.is_forest(graph):
        return Defect.DISCONNECTED
    return Defect.CYCLIC if graph.number_of_nodes() else Defect.DISCONNECTED


# -- empires ------------------------------------------------------------------

def empire_table(g: ProofGraph) -> dict[tuple[NodeId, Side], frozenset[NodeId]]:
    cache = EmpireCache(g)
    return {(a, side): cache.members(a, side) for a in g.node_ids for side in (NORTH, SOUTH)}


def check_oracle(g: ProofGraph, per_node: bool = False) -> list[str]:
    """Closure empires against the intersection oracle (all nodes, both sides)."""
    closure = empire_table(g)
    oracle = all_empires_by_intersection(g)
    bad = [f"{a}/{side.value}: closure {sorted(closure[(a, side)])} != oracle {sorted(oracle[(a, side)])}"
           for (a, side) in closure if closure[(a, side)] != oracle[(a, side)]]
    if per_node:
        for (a, side), members in closure.items():
            slow = empire_by_intersection(g, a, side)
            if slow != members:
                bad.append(f"{a}/{side.value}: per-node oracle {sorted(slow)} != closure {sorted(members)}")
    return bad


def check_principal(g: ProofGraph) -> list[str]:
    table = empire_table(g)
    bad = []
    for (a, side), members in table.items():
        s = principal_switching(g, a, side, members)
        got = s_component(g, s, a, side)
        if got != members:
            bad.append(f"{a}/{side.value}: principal component {sorted(got)} != empire {sorted(members)}")
    return bad


def check_terminal(g: ProofGraph) -> list[str]:
    table = empire_table(g)
    everything = frozenset(g.node_ids)
    bad = []
    for a in premises(g):
        if table[(a, SOUTH)] != everything:
            bad.append(f"premise {a}: south empire is not the whole graph")
        if table[(a, SOUTH)] | table[(a, NORTH)] != everything:
            bad.append(f"premise {a}: whole empire is not the whole graph")
    for b in conclusions(g):
        if table[(b, NORTH)] != everything:
            bad.append(f"conclusion {b}: north empire is not the whole graph")
        if table[(b, SOUTH)] | table[(b, NORTH)] != everything:
            bad.append(f"conclusion {b}: whole empire is not the whole graph")
    return bad


# (side of A's empire, side of B's empire, name) for "A in eB, B not in eA => eA proper subset of eB"
CONTAINMENT_RULES = ((NORTH, NORTH, "north-in-north containment"), (SOUTH, SOUTH, "south-in-south containment"),
                     (SOUTH, NORTH, "south-in-north containment"), (NORTH, SOUTH, "north-in-south containment"))
# same shape for "A not in eB, B not in eA => disjoint"
DISJOINTNESS_RULES = ((NORTH, NORTH, "north/north disjointness"), (SOUTH, SOUTH, "south/south disjointness"),
                      (SOUTH, NORTH, "south/north disjointness"))


def check_nesting(g: ProofGraph) -> list[str]:
    e = empire_table(g)
    whole = {a: e[(a, NORTH)] | e[(a, SOUTH)] for a in g.node_ids}
    bad = []
    for a in g.node_ids:
        if e[(a, NORTH)] & e[(a, SOUTH)] != {a}:
            bad.append(f"{a}: north and south share more than the root")
    for a, b in itertools.permutations(g.node_ids, 2):
        for sa, sb, name in CONTAINMENT_RULES:
            if a in e[(b, sb)] and b not in e[(a, sa)] and not e[(a, sa)] < e[(b, sb)]:
                bad.append(f"{name} fails for ({a}, {b})")
        for sa, sb, name in DISJOINTNESS_RULES:
            if a not in e[(b, sb)] and b not in e[(a, sa)] and e[(a, sa)] & e[(b, sb)]:
                bad.append(f"{name} fails for ({a}, {b})")
        if a not in whole[b] and b not in whole[a] and whole[a] & whole[b]:
            bad.append(f"whole-empire disjointness fails for ({a}, {b})")
        if a in whole[b] and b not in whole[a] and not whole[a] < whole[b]:
            bad.append(f"whole-empire containment fails for ({a}, {b})")
    return bad


def check_boundary(g: ProofGraph) -> list[str]:
    """Crossing a link out of a whole empire leads to a strictly larger whole empire."""
    cache = EmpireCache(g)
    whole = {a: cache.whole(a) for a in g.node_ids}
    bad = []
    for i, link in enumerate(g.links):
        for a in g.node_ids:
            wa = whole[a]
            if link.kind is LinkKind.IMP_I:
                main = link.conclusions[0]
                if (link.premises[0] in wa or link.hypothesis in wa) and main not in wa and not wa < whole[main]:
                    bad.append(f"ImpI escape at link {i} from {a}")
                continue
            for x, y in itertools.product(link.premises, link.conclusions):
                if x in wa and y not in wa and not wa < whole[y]:
                    bad.append(f"downward escape at link {i} from {a}")
                if y in wa and x not in wa and not wa < whole[x]:
                    bad.append(f"upward escape at link {i} from {a}")
    return bad


class SoundnessCache:
    """is_ngraph memoised on (node set, link set) of a fixed host graph."""

    def __init__(self, g: ProofGraph):
        self.g = g
        self.memo: dict[tuple[frozenset, frozenset], bool] = {}

    def sound(self, nodes: frozenset, links: frozenset) -> bool:
        key = (nodes, links)
        if key not in self.memo:
            self.memo[key] = is_ngraph(subgraph(self.g, nodes, links)).sound
        return self.memo[key]


def check_algebra(g: ProofGraph, pairs_limit: int | None = None) -> list[str]:
    """Empires are sub-N-Graphs; unions of two are sound iff they meet; meets are sound."""
    cache = SoundnessCache(g)
    subs = {}
    for key, members in empire_table(g).items():
        subs[key] = (members, frozenset(induced_links(g, members)))
    bad = [f"empire {k} is not an N-Graph" for k, (m, l) in subs.items() if not cache.sound(m, l)]
    distinct = list(dict.fromkeys(subs.values()))
    pairs = itertools.combinations(distinct, 2)
    if pairs_limit is not None:
        pairs = itertools.islice(pairs, pairs_limit)
    for (m1, l1), (m2, l2) in pairs:
        meet = m1 & m2
        union_sound = cache.sound(m1 | m2, l1 | l2)
        if union_sound != bool(meet):
            bad.append(f"union of {sorted(m1)} and {sorted(m2)} sound={union_sound} but meet={sorted(meet)}")
        if meet and not cache.sound(meet, l1 & l2):
            bad.append(f"meet {sorted(meet)} is not an N-Graph")
    return bad


def door_subgraphs(g: ProofGraph) -> Iterable[tuple[NodeId, frozenset, frozenset]]:
    """Every (node, nodes, links) with links a subset of g's links and nodes their nodes plus the node."""
    n = len(g.links)
    for mask in range(1 << n):
        chosen = frozenset(i for i in range(n) if mask >> i & 1)
        base = frozenset(x for i in chosen for x in g.links[i].nodes)
        for a in g.node_ids:
            if not chosen and a not in base:
                yield a, frozenset({a}), chosen
            elif chosen:
                yield a, base | {a}, chosen


def check_maximality(g: ProofGraph) -> list[str]:
    """Every sub-N-Graph with ``a`` as a lower (upper) door lies in a's north (south) empire."""
    cache = EmpireCache(g)
    sound = SoundnessCache(g)
    bad = []
    for a, nodes, links in door_subgraphs(g):
        if not sound.sound(nodes, links):
            continue
        h = subgraph(g, nodes, links)
        if a in conclusions(h) and not nodes <= cache.north(a):
            bad.append(f"sub-N-Graph {sorted(nodes)} with lower door {a} escapes its north empire")
        if a in premises(h) and not nodes <= cache.south(a):
            bad.append(f"sub-N-Graph {sorted(nodes)} with upper door {a} escapes its south empire")
    return bad


# -- splitting and sequentialization -------------------------------------------------

def check_split(g: ProofGraph) -> list[str]:
    """On a case-6 graph: both sides sound, meeting exactly at the split node,
    and every ImpI kept on one side."""
    try:
        split = find_split(g)
    except (PreconditionViolated, ValueError):
        return []
    except NoSplit as exc:
        return [f"no split: {exc}"]
    bad = []
    north, south = split.north.members, split.south.members
    if north & south != {split.node}:
        bad.append(f"sides meet in {sorted(north & south)}")
    if north | south != frozenset(g.node_ids):
        bad.append("sides do not cover the graph")
    for emp in (split.north, split.south):
        if not is_ngraph(emp.subgraph(g)).sound:
            bad.append(f"{emp.side.value} side is not an N-Graph")
    for i, link in enumerate(g.links):
        if link.kind is not LinkKind.IMP_I:
            continue
        parts = {link.premises[0], link.hypothesis, link.conclusions[0]} - {split.node}
        if not (parts <= north or parts <= south):
            bad.append(f"ImpI link {i} straddles the split")
    return bad


def check_sequentialization(g: ProofGraph) -> list[str]:
    """Checked derivation of the right end sequent; every cut at a maximal
    node whose whole empire is the whole current graph."""
    trace = Trace()
    d = sequentialize(g, trace=trace)
    bad = []
    result = lk_check(d)
    if not result.sound:
        bad.append(f"derivation rejected: {result}")
    if d.conclusion != end_sequent(g):
        bad.append(f"end sequent {d.conclusion} != {end_sequent(g)}")
    for h, split in trace.split_graphs:
        cache = EmpireCache(h)
        if cache.whole(split.node) != frozenset(h.node_ids):
            bad.append(f"split node {split.node} does not cover its graph")
        if split.node not in maximal_nodes(h, cache=cache):
            bad.append(f"split node {split.node} is not maximal")
    return bad
