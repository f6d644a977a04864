"""Proof-graphs: nodes, typed links, derived solid/meta edges, validation, file format."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Optional

from .formula import Formula, Sequent, parse_formula, to_text
from .links import SCHEMAS, SWITCHABLE, LinkKind, arity_class, schema_holds

NodeId = str


def natural_key(node_id: NodeId) -> tuple:
    """Sort key putting ``n2`` before ``n10``; used for every deterministic tie-break."""
    return tuple((0, int(part)) if part.isdigit() else (1, part)
                 for part in re.findall(r"\d+|\D+", node_id))


@dataclass(frozen=True)
class Node:
    id: NodeId
    label: Formula


@dataclass(frozen=True)
class Link:
    kind: LinkKind
    premises: tuple[NodeId, ...]
    conclusions: tuple[NodeId, ...]
    # ImpI only; the main conclusion is conclusions[0]
    hypothesis: Optional[NodeId] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "premises", tuple(self.premises))
        object.__setattr__(self, "conclusions", tuple(self.conclusions))

    @property
    def nodes(self) -> tuple[NodeId, ...]:
        extra = (self.hypothesis,) if self.hypothesis is not None else ()
        return self.premises + self.conclusions + extra

    @property
    def switchable(self) -> bool:
        return self.kind in SWITCHABLE


class ViolationKind(Enum):
    DUPLICATE_NODE = "DuplicateNode"
    UNKNOWN_NODE = "UnknownNode"
    DOUBLE_USE = "DoubleUse"
    DOUBLE_SOURCE = "DoubleSource"
    REPEATED_IN_LINK = "RepeatedInLink"
    ARITY = "Arity"
    SCHEMA_MISMATCH = "SchemaMismatch"


@dataclass(frozen=True)
class StructuralViolation:
    kind: ViolationKind
    subject: str
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind.value}({self.subject}){': ' + self.detail if self.detail else ''}"


class InvalidGraph(ValueError):
    def __init__(self, violations: list[StructuralViolation]):
        super().__init__("structurally invalid proof-graph: " + "; ".join(map(str, violations)))
        self.violations = violations


@dataclass(frozen=True)
class Edge:
    """Directed edge of a proof-graph or of one of its switchings."""

    tail: NodeId
    head: NodeId
    link: int
    meta: bool = False
    virtual: bool = False


@dataclass(frozen=True, eq=False)
class ProofGraph:
    nodes: tuple[Node, ...]
    links: tuple[Link, ...] = ()
    _checked: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "links", tuple(self.links))

    # -- lookup -----------------------------------------------------------

    @cached_property
    def label(self) -> dict[NodeId, Formula]:
        return {n.id: n.label for n in self.nodes}

    @cached_property
    def node_ids(self) -> tuple[NodeId, ...]:
        return tuple(n.id for n in self.nodes)

    @cached_property
    def index(self) -> dict[NodeId, int]:
        return {nid: i for i, nid in enumerate(self.node_ids)}

    @cached_property
    def premise_of(self) -> dict[NodeId, int]:
        """Link index for which the node is a premise."""
        out = {}
        for i, link in enumerate(self.links):
            for p in link.premises:
                out.setdefault(p, i)
        return out

    @cached_property
    def source_of(self) -> dict[NodeId, int]:
        """Link index for which the node is a conclusion or the discharged hypothesis."""
        out = {}
        for i, link in enumerate(self.links):
            for c in link.conclusions:
                out.setdefault(c, i)
            if link.hypothesis is not None:
                out.setdefault(link.hypothesis, i)
        return out

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        out = []
        for i, link in enumerate(self.links):
            for p in link.premises:
                for c in link.conclusions:
                    out.append(Edge(p, c, i))
                if link.hypothesis is not None:
                    out.append(Edge(p, link.hypothesis, i, meta=True))
        return tuple(out)

    @property
    def switchable_links(self) -> list[int]:
        return [i for i, link in enumerate(self.links) if link.switchable]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ProofGraph):
            return NotImplemented
        return set(self.nodes) == set(other.nodes) and sorted(self.links, key=repr) == sorted(other.links, key=repr)

    def __hash__(self) -> int:
        return hash((frozenset(self.nodes), frozenset(self.links)))

    def __len__(self) -> int:
        return len(self.nodes)

    def sorted_ids(self, ids: Iterable[NodeId]) -> list[NodeId]:
        return sorted(ids, key=natural_key)


def validate(g: ProofGraph) -> list[StructuralViolation]:
    """All structural violations of ``g``; empty iff ``g`` is a proof-graph."""
    out: list[StructuralViolation] = []
    seen: set[NodeId] = set()
    for n in g.nodes:
        if n.id in seen:
            out.append(StructuralViolation(ViolationKind.DUPLICATE_NODE, n.id))
        seen.add(n.id)

    label = {n.id: n.label for n in g.nodes}
    used_as_premise: dict[NodeId, int] = {}
    used_as_source: dict[NodeId, int] = {}
    for i, link in enumerate(g.links):
        name = f"link {i} ({link.kind.value})"
        schema = SCHEMAS[link.kind]
        if (len(link.premises) != len(schema.premises)
                or len(link.conclusions) != len(schema.conclusions)
                or (link.hypothesis is None) != (schema.hypothesis is None)):
            out.append(StructuralViolation(
                ViolationKind.ARITY, name,
                f"{arity_class(link.kind)} link needs {len(schema.premises)} premise(s) and "
                f"{len(schema.conclusions)} conclusion(s)"
                + (" plus a hypothesis" if schema.hypothesis is not None else "")))
            continue
        unknown = [nid for nid in link.nodes if nid not in seen]
        for nid in unknown:
            out.append(StructuralViolation(ViolationKind.UNKNOWN_NODE, nid, name))
        if len(set(link.nodes)) != len(link.nodes):
            repeated = sorted(nid for nid in set(link.nodes) if link.nodes.count(nid) > 1)
            out.append(StructuralViolation(ViolationKind.REPEATED_IN_LINK, name, ", ".join(repeated)))
        for p in link.premises:
            if p in used_as_premise and used_as_premise[p] != i:
                out.append(StructuralViolation(ViolationKind.DOUBLE_USE, p,
                                               f"premise of links {used_as_premise[p]} and {i}"))
            used_as_premise.setdefault(p, i)
        sources = list(link.conclusions) + ([link.hypothesis] if link.hypothesis is not None else [])
        for c in sources:
            if c in used_as_source and used_as_source[c] != i:
                out.append(StructuralViolation(ViolationKind.DOUBLE_SOURCE, c,
                                               f"conclusion of links {used_as_source[c]} and {i}"))
            used_as_source.setdefault(c, i)
        if unknown:
            continue
        hyp = label[link.hypothesis] if link.hypothesis is not None else None
        if not schema_holds(link.kind, [label[p] for p in link.premises],
                            [label[c] for c in link.conclusions], hyp):
            shown = " ".join(to_text(label[p]) for p in link.premises) + " => " + \
                " ".join(to_text(label[c]) for c in link.conclusions)
            out.append(StructuralViolation(ViolationKind.SCHEMA_MISMATCH, name, shown))
    return out


def check_valid(g: ProofGraph) -> ProofGraph:
    """Raise InvalidGraph unless ``g`` is structurally valid; memoised per instance."""
    if g._checked:
        return g
    violations = validate(g)
    if violations:
        raise InvalidGraph(violations)
    object.__setattr__(g, "_checked", True)
    return g


def premises(g: ProofGraph) -> set[NodeId]:
    """PREMIS: nodes with no incoming edge, solid or meta."""
    check_valid(g)
    return {nid for nid in g.node_ids if nid not in g.source_of}


def conclusions(g: ProofGraph) -> set[NodeId]:
    """CONC: nodes with no outgoing edge, solid or meta."""
    check_valid(g)
    return {nid for nid in g.node_ids if nid not in g.premise_of}


def hypotheses(g: ProofGraph) -> set[NodeId]:
    """HYPOT: discharged hypotheses (no solid in-edge, one meta in-edge)."""
    check_valid(g)
    return {link.hypothesis for link in g.links if link.hypothesis is not None}


def end_sequent(g: ProofGraph) -> Sequent:
    return Sequent(tuple(g.label[n] for n in premises(g)),
                   tuple(g.label[n] for n in conclusions(g)))


# -- construction helpers ------------------------------------------------

def subgraph(g: ProofGraph, node_ids: Iterable[NodeId], link_indices: Iterable[int]) -> ProofGraph:
    keep = set(node_ids)
    nodes = tuple(n for n in g.nodes if n.id in keep)
    links = tuple(g.links[i] for i in sorted(set(link_indices)))
    return ProofGraph(nodes, links)


def induced_links(g: ProofGraph, node_ids: Iterable[NodeId]) -> list[int]:
    keep = set(node_ids)
    return [i for i, link in enumerate(g.links) if all(n in keep for n in link.nodes)]


def induced_subgraph(g: ProofGraph, node_ids: Iterable[NodeId]) -> ProofGraph:
    """Nodes ``node_ids`` with every link all of whose nodes are kept."""
    node_ids = set(node_ids)
    return subgraph(g, node_ids, induced_links(g, node_ids))


def relabel(g: ProofGraph, mapping: Mapping[NodeId, NodeId]) -> ProofGraph:
    def r(x):
        return mapping.get(x, x)
    nodes = tuple(Node(r(n.id), n.label) for n in g.nodes)
    links = tuple(Link(l.kind, tuple(map(r, l.premises)), tuple(map(r, l.conclusions)),
                       r(l.hypothesis) if l.hypothesis is not None else None) for l in g.links)
    return ProofGraph(nodes, links)


def single_node(label: Formula | str, node_id: NodeId = "n0") -> ProofGraph:
    if isinstance(label, str):
        label = parse_formula(label)
    return ProofGraph((Node(node_id, label),))


class GraphBuilder:
    """Incremental construction with generated ids ``n0, n1, ...``."""

    def __init__(self, prefix: str = "n"):
        self.prefix = prefix
        self.counter = 0
        self.nodes: dict[NodeId, Formula] = {}
        self.links: list[Link] = []

    def node(self, label: Formula | str, node_id: Optional[NodeId] = None) -> NodeId:
        if isinstance(label, str):
            label = parse_formula(label)
        if node_id is None:
            node_id = f"{self.prefix}{self.counter}"
            self.counter += 1
        if node_id in self.nodes:
            raise ValueError(f"duplicate node id {node_id!r}")
        self.nodes[node_id] = label
        return node_id

    def link(self, kind: LinkKind | str, premises: Iterable[NodeId], conclusions: Iterable[NodeId],
             hypothesis: Optional[NodeId] = None) -> int:
        if isinstance(kind, str):
            kind = LinkKind.from_name(kind)
        self.links.append(Link(kind, tuple(premises), tuple(conclusions), hypothesis))
        return len(self.links) - 1

    def build(self, check: bool = True) -> ProofGraph:
        g = ProofGraph(tuple(Node(k, v) for k, v in self.nodes.items()), tuple(self.links))
        if check:
            check_valid(g)
        return g


# -- file format -----------------------------------------------------------

def to_json_obj(g: ProofGraph) -> dict:
    links = []
    for link in g.links:
        obj = {"kind": link.kind.value, "premises": list(link.premises),
               "conclusions": list(link.conclusions)}
        if link.hypothesis is not None:
            obj["hypothesis"] = link.hypothesis
        links.append(obj)
    return {"nodes": [{"id": n.id, "formula": to_text(n.label)} for n in g.nodes], "links": links}


def from_json_obj(obj: Mapping) -> ProofGraph:
    try:
        nodes = tuple(Node(str(n["id"]), parse_formula(n["formula"])) for n in obj["nodes"])
        links = tuple(Link(LinkKind.from_name(l["kind"]), tuple(map(str, l["premises"])),
                           tuple(map(str, l["conclusions"])),
                           str(l["hypothesis"]) if l.get("hypothesis") is not None else None)
                      for l in obj.get("links", []))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed proof-graph object: {exc}") from exc
    return ProofGraph(nodes, links)


def dumps(g: ProofGraph) -> str:
    return json.dumps(to_json_obj(g), indent=2)


def loads(text: str) -> ProofGraph:
    return from_json_obj(json.loads(text))


def load(path) -> ProofGraph:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def save(g: ProofGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(g) + "\n")
