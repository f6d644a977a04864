"""Graphviz DOT rendering of proof-graphs, empires, splits and LK derivations."""

from __future__ import annotations

from typing import Iterable, Optional

from .empires import Empire, Side
from .formula import pretty
from .graph import NodeId, ProofGraph
from .links import LinkKind
from .lk import LKDerivation
from .order import Split
from .switching import MetaSwitching, kept_edges

NORTH_COLOR = "palegreen"
SOUTH_COLOR = "khaki1"
ROOT_COLOR = "tomato"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def _node_line(g: ProofGraph, n: NodeId, fill: Optional[str] = None, indent: str = "  ") -> str:
    attrs = [f"label={_quote(pretty(g.label[n]))}", f"tooltip={_quote(n)}"]
    if fill:
        attrs += ["style=filled", f"fillcolor={_quote(fill)}"]
    return f"{indent}{_quote(n)} [{', '.join(attrs)}];"


def _edge_lines(g: ProofGraph, switching: Optional[MetaSwitching] = None) -> list[str]:
    lines = []
    kept = None
    if switching is not None:
        choice = switching.as_dict()
        kept = {(e.tail, e.head, e.link) for i in range(len(g.links)) for e in kept_edges(g, i, choice.get(i))}
    for e in g.edges:
        link = g.links[e.link]
        attrs = [f"tooltip={_quote(f'{e.link}:{link.kind.value}')}"]
        if e.meta:
            attrs += ["style=dashed", 'label="m"']
        elif link.kind in (LinkKind.CONTRACTION, LinkKind.EXPANSION):
            attrs.append("style=dotted")
        if kept is not None and not e.meta and (e.tail, e.head, e.link) not in kept:
            attrs.append("color=gray80")
        lines.append(f"  {_quote(e.tail)} -> {_quote(e.head)} [{', '.join(attrs)}];")
    if switching is not None:
        for i, c in switching.choices:
            link = g.links[i]
            if link.kind is LinkKind.IMP_I and c.value == "Virtual":
                lines.append(f"  {_quote(link.hypothesis)} -> {_quote(link.conclusions[0])} "
                             f'[style=bold, color=blue, label="v", constraint=false];')
    return lines


def graph_dot(g: ProofGraph, fills: Optional[dict[NodeId, str]] = None,
              switching: Optional[MetaSwitching] = None, name: str = "proofgraph") -> str:
    """Solid edges solid, meta edges dashed with label m, contraction and
    expansion edges dotted. With ``switching`` the dropped edges are greyed and
    chosen virtual edges drawn in blue."""
    fills = fills or {}
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
    lines += [_node_line(g, n, fills.get(n)) for n in g.sorted_ids(g.node_ids)]
    lines += _edge_lines(g, switching)
    lines.append("}")
    return "\n".join(lines) + "\n"


def empire_dot(g: ProofGraph, empires: Iterable[Empire]) -> str:
    """North members green, south members yellow, the root red."""
    fills: dict[NodeId, str] = {}
    roots = set()
    for emp in empires:
        roots.add(emp.root)
        if emp.side is Side.WHOLE:
            continue
        color = NORTH_COLOR if emp.side is Side.NORTH else SOUTH_COLOR
        for n in emp.members:
            fills.setdefault(n, color)
    for emp in empires:
        if emp.side is Side.WHOLE:
            for n in emp.members:
                fills.setdefault(n, NORTH_COLOR)
    for r in roots:
        fills[r] = ROOT_COLOR
    return graph_dot(g, fills, name="empire")


def split_dot(g: ProofGraph, split: Split) -> str:
    """Two clusters, one per empire, with the split node drawn between them."""
    lines = ["digraph split {", "  rankdir=TB;", "  node [shape=plaintext];", "  compound=true;"]
    for side, emp, color in (("north", split.north, NORTH_COLOR), ("south", split.south, SOUTH_COLOR)):
        lines.append(f"  subgraph cluster_{side} {{")
        lines.append(f"    label={_quote(side)}; style=filled; color={_quote(color)};")
        for n in g.sorted_ids(emp.members - {split.node}):
            lines.append(_node_line(g, n, indent="    "))
        lines.append("  }")
    lines.append(_node_line(g, split.node, ROOT_COLOR))
    lines += _edge_lines(g)
    lines.append("}")
    return "\n".join(lines) + "\n"


def derivation_dot(d: LKDerivation) -> str:
    """Derivation tree drawn root-at-bottom: edges run from premises to conclusions."""
    lines = ["digraph derivation {", "  rankdir=BT;", "  node [shape=box, fontname=monospace];"]
    counter = 0

    def go(node: LKDerivation) -> str:
        nonlocal counter
        me = f"d{counter}"
        counter += 1
        label = f"{node.conclusion.pretty()}\\n[{node.rule.value}]"
        lines.append(f'  {me} [label="{label}"];')
        for p in node.premises:
            child = go(p)
            lines.append(f"  {child} -> {me};")
        return me

    go(d)
    lines.append("}")
    return "\n".join(lines) + "\n"
