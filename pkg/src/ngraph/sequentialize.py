"""Translate N-Graphs into LK derivations by induction on the number of links."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .empires import EmpireCache
from .formula import BOTTOM, TOP, And, Atom, Formula, Neg, Or, Sequent, encode_units
from .graph import Link, NodeId, ProofGraph, check_valid, end_sequent, induced_subgraph, subgraph
from .links import LinkKind
from .lk import LKDerivation, LKRule, axiom, formulas_of, infer, unit_axiom, weaken_to
from .order import Split, find_split, reducible_link
from .switching import Verdict, is_ngraph


class UnsoundGraph(ValueError):
    def __init__(self, verdict: Verdict):
        super().__init__(f"graph is not an N-Graph: {verdict}")
        self.verdict = verdict


class SequentializationError(RuntimeError):
    """An intermediate graph broke an invariant the construction relies on."""


def single_link_derivation(kind: LinkKind, premises: list[Formula], conclusions: list[Formula]) -> LKDerivation:
    """Derivation of ``premises |- conclusions`` for one non-switchable link."""
    if kind in (LinkKind.CONTRACTION, LinkKind.EXPANSION, LinkKind.IMP_I):
        raise ValueError(f"{kind.value} has no single-link derivation")
    if kind is LinkKind.AND_I:
        (c,) = conclusions
        return infer(LKRule.AND_R, c, axiom(c.left), axiom(c.right))
    if kind is LinkKind.OR_E:
        (p,) = premises
        return infer(LKRule.OR_L, p, axiom(p.left), axiom(p.right))
    if kind is LinkKind.IMP_E:
        imp = premises[1]
        return infer(LKRule.IMP_L, imp, axiom(imp.left), axiom(imp.right))
    if kind in (LinkKind.AND_EL, LinkKind.AND_ER):
        (p,), (c,) = premises, conclusions
        rule = LKRule.AND_L1 if kind is LinkKind.AND_EL else LKRule.AND_L2
        return infer(rule, p, axiom(c))
    if kind in (LinkKind.OR_IL, LinkKind.OR_IR):
        (p,), (c,) = premises, conclusions
        rule = LKRule.OR_R1 if kind is LinkKind.OR_IL else LKRule.OR_R2
        return infer(rule, c, axiom(p))
    if kind is LinkKind.BOT_LINK:
        a, neg = premises
        return infer(LKRule.RW, BOTTOM, infer(LKRule.NEG_L, neg, axiom(a)))
    if kind is LinkKind.TOP_LINK:
        a, neg = conclusions
        return infer(LKRule.LW, TOP, infer(LKRule.NEG_R, neg, axiom(a)))
    if kind is LinkKind.TOP_FW:
        return infer(LKRule.LW, TOP, axiom(conclusions[0]))
    if kind is LinkKind.BOT_DW:
        return infer(LKRule.RW, BOTTOM, axiom(premises[0]))
    if kind is LinkKind.TOP_SW:
        return infer(LKRule.LW, premises[0], unit_axiom(LKRule.TOP_R, Sequent((), (TOP,))))
    if kind is LinkKind.BOT_SW:
        return infer(LKRule.RW, conclusions[0], unit_axiom(LKRule.BOT_L, Sequent((BOTTOM,), ())))
    raise ValueError(f"no derivation for {kind.value}")


def link_derivation(g: ProofGraph, link: Link) -> LKDerivation:
    return single_link_derivation(link.kind, [g.label[n] for n in link.premises],
                                  [g.label[n] for n in link.conclusions])


@dataclass
class Trace:
    """Record of the cases taken, in the order they were entered."""

    cases: list[tuple[int, Optional[NodeId]]] = field(default_factory=list)
    splits: list[NodeId] = field(default_factory=list)
    # (graph, split) for every cut, so callers can audit the chosen node
    split_graphs: list[tuple[ProofGraph, Split]] = field(default_factory=list)


def _without(g: ProofGraph, drop_node: NodeId, drop_link: int) -> ProofGraph:
    keep = [n for n in g.node_ids if n != drop_node]
    return subgraph(g, keep, [i for i in range(len(g.links)) if i != drop_link])


def _sequentialize(g: ProofGraph, verify: bool, trace: Optional[Trace]) -> LKDerivation:
    if verify and not is_ngraph(g).sound:
        raise SequentializationError(f"intermediate graph with {len(g.links)} links is not an N-Graph")
    if not g.links:
        if len(g.nodes) != 1:
            raise SequentializationError("a link-free N-Graph has exactly one node")
        if trace is not None:
            trace.cases.append((1, g.nodes[0].id))
        return axiom(g.nodes[0].label)
    if len(g.links) == 1:
        if trace is not None:
            trace.cases.append((2, None))
        return link_derivation(g, g.links[0])

    reducible = reducible_link(g)
    if reducible is not None:
        case, i = reducible
        link = g.links[i]
        if case == 3:
            key, rule = link.premises[0], LKRule.LC
        else:
            key, rule = link.conclusions[0], (LKRule.RC if case == 4 else LKRule.IMP_R)
        if trace is not None:
            trace.cases.append((case, key))
        below = _sequentialize(_without(g, key, i), verify, trace)
        return infer(rule, g.label[key], below)

    split = find_split(g, EmpireCache(g))
    if trace is not None:
        trace.cases.append((6, split.node))
        trace.splits.append(split.node)
        trace.split_graphs.append((g, split))
    north = induced_subgraph(g, split.north.members)
    south = induced_subgraph(g, split.south.members)
    if not (len(north.links) < len(g.links) and len(south.links) < len(g.links)):
        raise SequentializationError(f"split at {split.node!r} does not shrink the graph")
    left = _sequentialize(north, verify, trace)
    right = _sequentialize(south, verify, trace)
    return infer(LKRule.CUT, g.label[split.node], left, right)


def sequentialize(g: ProofGraph, *, encode: bool = False, verify: bool = False,
                  trace: Optional[Trace] = None, max_switchables: Optional[int] = None) -> LKDerivation:
    """LK derivation of ``end_sequent(g)``; raises UnsoundGraph unless ``g`` is an N-Graph.

    ``verify`` re-checks the criterion on every intermediate graph. ``encode``
    rewrites the units away afterwards (see ``encode_derivation``).
    """
    check_valid(g)
    verdict = is_ngraph(g, max_switchables)
    if not verdict.sound:
        raise UnsoundGraph(verdict)
    d = _sequentialize(g, verify, trace)
    if d.conclusion != end_sequent(g):
        raise SequentializationError(f"derived {d.conclusion}, expected {end_sequent(g)}")
    return encode_derivation(d) if encode else d


# -- unit encoding -----------------------------------------------------------

def default_witness(d: LKDerivation) -> Formula:
    names = sorted(f.name for f in formulas_of(d) if isinstance(f, Atom))
    return Atom(names[0] if names else "p")


def excluded_middle(w: Formula) -> LKDerivation:
    """|- w | ~w"""
    goal = Or(w, Neg(w))
    d = infer(LKRule.NEG_R, Neg(w), axiom(w))
    d = infer(LKRule.OR_R2, goal, d)
    d = infer(LKRule.OR_R1, goal, d)
    return infer(LKRule.RC, goal, d)


def non_contradiction(w: Formula) -> LKDerivation:
    """w & ~w |-"""
    goal = And(w, Neg(w))
    d = infer(LKRule.NEG_L, Neg(w), axiom(w))
    d = infer(LKRule.AND_L2, goal, d)
    d = infer(LKRule.AND_L1, goal, d)
    return infer(LKRule.LC, goal, d)


def _subst(s: Sequent, w: Formula) -> Sequent:
    return Sequent(tuple(encode_units(f, w) for f in s.antecedent),
                   tuple(encode_units(f, w) for f in s.succedent))


def encode_derivation(d: LKDerivation, witness: Optional[Formula] = None) -> LKDerivation:
    """Substitute ``w | ~w`` for T and ``w & ~w`` for F everywhere.

    Every rule survives a uniform substitution except the unit axioms, which
    become derived proofs of excluded middle and non-contradiction padded by
    weakening.
    """
    w = witness if witness is not None else default_witness(d)

    def go(node: LKDerivation) -> LKDerivation:
        conclusion = _subst(node.conclusion, w)
        if node.rule is LKRule.TOP_R:
            return weaken_to(excluded_middle(w), conclusion)
        if node.rule is LKRule.BOT_L:
            return weaken_to(non_contradiction(w), conclusion)
        principal = encode_units(node.principal, w) if node.principal is not None else None
        return LKDerivation(node.rule, conclusion, tuple(go(p) for p in node.premises), principal)

    return go(d)
