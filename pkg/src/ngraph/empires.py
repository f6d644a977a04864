"""North, south and whole empires.

``empire_closure`` is the production algorithm: a worklist fixpoint of the
link-local closure rules. ``empire_by_intersection`` intersects switching
components over every meta-switching and serves as the independent oracle.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

from .graph import Link, NodeId, ProofGraph, check_valid, induced_links, induced_subgraph
from .links import LinkKind
from .switching import (Choice, MetaSwitching, choices_for, enumerate_meta_switchings,
                        switching_graph)


class Side(Enum):
    NORTH = "north"
    SOUTH = "south"
    WHOLE = "whole"


@dataclass(frozen=True)
class Empire:
    root: NodeId
    side: Side
    members: frozenset[NodeId]

    def __contains__(self, node: NodeId) -> bool:
        return node in self.members

    def __len__(self) -> int:
        return len(self.members)

    def subgraph(self, g: ProofGraph) -> ProofGraph:
        return induced_subgraph(g, self.members)

    def links(self, g: ProofGraph) -> list[int]:
        return induced_links(g, self.members)


def _require_node(g: ProofGraph, a: NodeId) -> None:
    if a not in g.index:
        raise KeyError(f"unknown node {a!r}")


def _side(side: Side | str) -> Side:
    return side if isinstance(side, Side) else Side(side.lower())


# -- switching components ----------------------------------------------------

def s_component(g: ProofGraph, s: MetaSwitching, a: NodeId, side: Side | str) -> frozenset[NodeId]:
    """Component of ``a`` in the switching graph once the kept edges leaving
    ``a`` downward (north) or entering ``a`` from above (south) are removed.

    A virtual edge counts as running from the hypothesis to the main conclusion.
    """
    side = _side(side)
    _require_node(g, a)
    sg = switching_graph(g, s)
    adj: dict[NodeId, list[NodeId]] = {n: [] for n in sg.nodes}
    for e in sg.edges:
        if side is Side.NORTH and e.tail == a:
            continue
        if side is Side.SOUTH and e.head == a:
            continue
        adj[e.tail].append(e.head)
        adj[e.head].append(e.tail)
    seen = {a}
    queue = deque([a])
    while queue:
        x = queue.popleft()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return frozenset(seen)


def empire_by_intersection(g: ProofGraph, a: NodeId, side: Side | str,
                           max_switchables: Optional[int] = None) -> frozenset[NodeId]:
    side = _side(side)
    _require_node(g, a)
    result: Optional[frozenset[NodeId]] = None
    for s in enumerate_meta_switchings(g, max_switchables):
        comp = s_component(g, s, a, side)
        result = comp if result is None else result & comp
    return result


def all_empires_by_intersection(g: ProofGraph, max_switchables: Optional[int] = None
                                ) -> dict[tuple[NodeId, Side], frozenset[NodeId]]:
    """The intersection oracle for every node and both sides at once.

    Each switching graph of a sound graph is a tree; rooting it gives subtree
    bitmasks, and the component of ``a`` after deleting some of its incident
    edges is ``a`` plus the subtrees behind the surviving ones.
    """
    ids = g.node_ids
    n = len(ids)
    index = g.index
    full = (1 << n) - 1
    acc = {(a, side): full for a in range(n) for side in (Side.NORTH, Side.SOUTH)}
    for s in enumerate_meta_switchings(g, max_switchables):
        edges = switching_graph(g, s).edges
        if len(edges) != n - 1:
            raise ValueError("switching graph is not a tree; the graph is not an N-Graph")
        # (neighbour, a_is_tail, a_is_head)
        adj: list[list[tuple[int, bool, bool]]] = [[] for _ in range(n)]
        for e in edges:
            t, h = index[e.tail], index[e.head]
            adj[t].append((h, True, False))
            adj[h].append((t, False, True))
        parent = [-1] * n
        order = [0]
        seen = [False] * n
        seen[0] = True
        for x in order:
            for y, _, _ in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    parent[y] = x
                    order.append(y)
        if len(order) != n:
            raise ValueError("switching graph is disconnected; the graph is not an N-Graph")
        sub = [1 << k for k in range(n)]
        for x in reversed(order):
            if parent[x] >= 0:
                sub[parent[x]] |= sub[x]
        for x in range(n):
            north = south = 1 << x
            for y, x_tail, x_head in adj[x]:
                behind = sub[y] if parent[y] == x else full ^ sub[x]
                if not x_tail:
                    north |= behind
                if not x_head:
                    south |= behind
            acc[(x, Side.NORTH)] &= north
            acc[(x, Side.SOUTH)] &= south
    return {(ids[x], side): frozenset(ids[k] for k in range(n) if mask >> k & 1)
            for (x, side), mask in acc.items()}


# -- closure -------------------------------------------------------------

def _upward(link: Link) -> tuple[tuple[NodeId, ...], tuple[NodeId, ...], bool]:
    """(sources, targets, needs_all) for growth from conclusions to premises."""
    if link.kind is LinkKind.IMP_I:
        return link.conclusions, (link.premises[0], link.hypothesis), False
    return link.conclusions, link.premises, link.kind is LinkKind.EXPANSION


def _downward(link: Link) -> tuple[tuple[NodeId, ...], tuple[NodeId, ...], bool]:
    """(sources, targets, needs_all) for growth from premises to conclusions."""
    if link.kind is LinkKind.IMP_I:
        return (link.premises[0], link.hypothesis), link.conclusions, True
    return link.premises, link.conclusions, link.kind is LinkKind.CONTRACTION


def _fire(link: Link, members: set[NodeId], a: NodeId, side: Side) -> list[NodeId]:
    """Nodes the closure rules add from one link given the current members.

    Upward growth: one conclusion suffices except for expansion (both needed).
    Downward growth: one premise suffices except for contraction and ImpI
    (both premises, resp. premise and hypothesis, needed). North never grows
    downward out of the root; south never grows upward out of the root.
    """
    out: list[NodeId] = []
    for direction in (_upward, _downward):
        sources, targets, needs_all = direction(link)
        present = [x in members for x in sources]
        if not (all(present) if needs_all else any(present)):
            continue
        blocked_side = Side.SOUTH if direction is _upward else Side.NORTH
        if side is blocked_side and a in sources:
            continue
        out.extend(t for t in targets if t not in members)
    return out


def closure_members(g: ProofGraph, a: NodeId, side: Side | str) -> frozenset[NodeId]:
    side = _side(side)
    _require_node(g, a)
    members = {a}
    work = deque([a])
    while work:
        x = work.popleft()
        for table in (g.premise_of, g.source_of):
            i = table.get(x)
            if i is None:
                continue
            for y in _fire(g.links[i], members, a, side):
                if y not in members:
                    members.add(y)
                    work.append(y)
    return frozenset(members)


def empire_closure(g: ProofGraph, a: NodeId, side: Side | str) -> Empire:
    """North or south empire of ``a`` by the closure rules."""
    side = _side(side)
    if side is Side.WHOLE:
        return whole_empire(g, a)
    check_valid(g)
    return Empire(a, side, closure_members(g, a, side))


def whole_empire(g: ProofGraph, a: NodeId) -> Empire:
    check_valid(g)
    members = closure_members(g, a, Side.NORTH) | closure_members(g, a, Side.SOUTH)
    return Empire(a, Side.WHOLE, members)


class EmpireCache:
    """Memoised closures for repeated queries over one graph."""

    def __init__(self, g: ProofGraph):
        check_valid(g)
        self.g = g
        self._cache: dict[tuple[NodeId, Side], frozenset[NodeId]] = {}

    def members(self, a: NodeId, side: Side | str) -> frozenset[NodeId]:
        side = _side(side)
        key = (a, side)
        if key not in self._cache:
            if side is Side.WHOLE:
                self._cache[key] = self.members(a, Side.NORTH) | self.members(a, Side.SOUTH)
            else:
                self._cache[key] = closure_members(self.g, a, side)
        return self._cache[key]

    def north(self, a: NodeId) -> frozenset[NodeId]:
        return self.members(a, Side.NORTH)

    def south(self, a: NodeId) -> frozenset[NodeId]:
        return self.members(a, Side.SOUTH)

    def whole(self, a: NodeId) -> frozenset[NodeId]:
        return self.members(a, Side.WHOLE)


# -- principal meta-switchings --------------------------------------------

def principal_switching(g: ProofGraph, a: NodeId, side: Side | str,
                        members: Optional[Iterable[NodeId]] = None) -> MetaSwitching:
    """A meta-switching whose component at ``a`` is exactly the empire.

    Links touching ``a`` keep the edge through ``a`` when that edge is the one
    the component construction deletes (north: contraction premise or either
    ImpI input; south: expansion conclusion). Elsewhere, a switchable link with
    exactly one relevant side in the empire keeps the edge on the outside.
    Unconstrained links default to Left / Direct.
    """
    side = _side(side)
    if side is Side.WHOLE:
        raise ValueError("principal switchings exist for north and south empires only")
    empire = frozenset(members) if members is not None else closure_members(g, a, side)
    out: dict[int, Choice] = {}
    for i in g.switchable_links:
        link = g.links[i]
        default = choices_for(link.kind)[0]
        if link.kind is LinkKind.CONTRACTION:
            p0, p1 = link.premises
            if side is Side.NORTH and a in (p0, p1):
                out[i] = Choice.LEFT if a == p0 else Choice.RIGHT
            elif (p0 in empire) != (p1 in empire):
                out[i] = Choice.RIGHT if p0 in empire else Choice.LEFT
            else:
                out[i] = default
        elif link.kind is LinkKind.EXPANSION:
            c0, c1 = link.conclusions
            if side is Side.SOUTH and a in (c0, c1):
                out[i] = Choice.LEFT if a == c0 else Choice.RIGHT
            elif (c0 in empire) != (c1 in empire):
                out[i] = Choice.RIGHT if c0 in empire else Choice.LEFT
            else:
                out[i] = default
        else:
            y, x = link.premises[0], link.hypothesis
            if side is Side.NORTH and a in (x, y):
                out[i] = Choice.DIRECT if a == y else Choice.VIRTUAL
            elif (x in empire) != (y in empire):
                out[i] = Choice.DIRECT if x in empire else Choice.VIRTUAL
            else:
                out[i] = default
    return MetaSwitching.of(out)
