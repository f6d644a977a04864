"""The whole-empire ordering on internal occurrences and split-node search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .empires import Empire, EmpireCache, Side
from .graph import NodeId, ProofGraph, check_valid, conclusions, hypotheses, natural_key, premises
from .links import LinkKind


class DomainError(ValueError):
    """A premise or conclusion was passed where an internal occurrence is required."""


class PreconditionViolated(ValueError):
    """A simpler reduction (initial expansion, final contraction, final ImpI) applies first."""

    def __init__(self, case: int, link: int):
        names = {3: "initial expansion", 4: "final contraction", 5: "final ImpI"}
        super().__init__(f"case {case} applies ({names[case]} link {link}); reduce before splitting")
        self.case = case
        self.link = link


class NoSplit(RuntimeError):
    """No internal node has the whole graph as its whole empire."""


@dataclass(frozen=True)
class Split:
    node: NodeId
    north: Empire
    south: Empire


def order_domain(g: ProofGraph) -> set[NodeId]:
    """Nodes that are neither premises nor conclusions of ``g``."""
    return set(g.node_ids) - premises(g) - conclusions(g)


def split_candidates(g: ProofGraph) -> list[NodeId]:
    """The ordering's domain minus discharged hypotheses, in natural order.

    A hypothesis can have the whole graph as its whole empire while its north
    empire is just itself, so cutting there would not shrink anything.
    """
    return sorted(order_domain(g) - hypotheses(g), key=natural_key)


def order_lt(g: ProofGraph, a: NodeId, b: NodeId, cache: Optional[EmpireCache] = None) -> bool:
    """True iff the whole empire of ``a`` is a proper subset of that of ``b``."""
    domain = order_domain(g)
    for x in (a, b):
        if x not in domain:
            raise DomainError(f"{x!r} is a premise or conclusion of the graph")
    cache = cache or EmpireCache(g)
    return cache.whole(a) < cache.whole(b)


def maximal_nodes(g: ProofGraph, candidates: Optional[list[NodeId]] = None,
                  cache: Optional[EmpireCache] = None) -> list[NodeId]:
    """Candidates not strictly below any other candidate, in natural order."""
    cache = cache or EmpireCache(g)
    pool = split_candidates(g) if candidates is None else sorted(candidates, key=natural_key)
    whole = {x: cache.whole(x) for x in pool}
    return [x for x in pool if not any(whole[x] < whole[y] for y in pool if y != x)]


def reducible_link(g: ProofGraph) -> Optional[tuple[int, int]]:
    """(case, link index) of the first applicable reduction in case order 3, 4, 5.

    Within a case the link whose key node (expansion premise, contraction
    conclusion, ImpI main conclusion) has the smallest id wins.
    """
    prem, conc = premises(g), conclusions(g)
    for case, kind, key, pool in ((3, LinkKind.EXPANSION, lambda l: l.premises[0], prem),
                                  (4, LinkKind.CONTRACTION, lambda l: l.conclusions[0], conc),
                                  (5, LinkKind.IMP_I, lambda l: l.conclusions[0], conc)):
        found = [(natural_key(key(link)), i) for i, link in enumerate(g.links)
                 if link.kind is kind and key(link) in pool]
        if found:
            return case, min(found)[1]
    return None


def find_split(g: ProofGraph, cache: Optional[EmpireCache] = None) -> Split:
    check_valid(g)
    if len(g.links) < 2:
        raise ValueError("a split needs at least two links")
    reducible = reducible_link(g)
    if reducible is not None:
        raise PreconditionViolated(*reducible)
    cache = cache or EmpireCache(g)
    everything = frozenset(g.node_ids)
    for a in maximal_nodes(g, cache=cache):
        if cache.whole(a) != everything:
            continue
        north = Empire(a, Side.NORTH, cache.north(a))
        south = Empire(a, Side.SOUTH, cache.south(a))
        north_links, south_links = set(north.links(g)), set(south.links(g))
        if north_links & south_links or len(north_links) + len(south_links) != len(g.links):
            raise NoSplit(f"empires of {a!r} do not partition the links")
        if north.members & south.members != {a}:
            raise NoSplit(f"empires of {a!r} share more than the split node")
        return Split(a, north, south)
    raise NoSplit("no maximal internal node has the whole graph as its whole empire")
