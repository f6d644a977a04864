"""Seeded random proof-graphs.

Sound graphs are grown from axiom vertices by steps that keep every
meta-switching graph a tree: each step hangs new nodes off one existing vertex,
joins two trees through a fresh node, glues two trees at one vertex, or adds a
switchable link whose every choice attaches a fresh pendant node. Unsound
graphs are mutations of sound ones, kept only once the checker rejects them.

Randomness comes from ``random.Random(seed)`` (Mersenne Twister), whose
output for a given seed is the same on every platform.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

from .formula import And, Atom, Formula, Imp, Or
from .graph import Link, Node, NodeId, ProofGraph, check_valid, conclusions, premises, validate
from .links import FOCUSSING, SCHEMAS, SIMPLE, LinkKind, arity_class, fill_schema, random_formula
from .switching import is_ngraph

SWITCH_KINDS = (LinkKind.CONTRACTION, LinkKind.EXPANSION, LinkKind.IMP_I)

DEFAULT_WEIGHTS: dict[LinkKind, float] = {
    **{kind: 1.0 for kind in LinkKind},
    LinkKind.AND_I: 1.5,
    LinkKind.OR_E: 1.5,
    LinkKind.CONTRACTION: 2.5,
    LinkKind.EXPANSION: 2.5,
    LinkKind.IMP_I: 2.0,
}


class GeneratorError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    seed: int = 0
    max_links: int = 14
    atom_pool: tuple[str, ...] = ("p", "q", "r")
    kind_weights: dict = field(default_factory=lambda: dict(DEFAULT_WEIGHTS))
    # invalid corpus only: chance of stacking one more mutation
    mutation_rate: float = 0.3
    # chance that a fresh label reuses one already present (creates twins)
    twin_rate: float = 0.35
    spawn_rate: float = 0.15
    glue_rate: float = 0.5
    formula_depth: int = 2
    max_switchables: Optional[int] = None
    # forced sequence of link kinds, realised in order; no other steps are taken
    script: Optional[tuple[LinkKind, ...]] = None

    def validate(self) -> None:
        if self.max_links < 0:
            raise ValueError("max_links must be non-negative")
        if not self.atom_pool:
            raise ValueError("atom_pool must not be empty")
        weights = [self.kind_weights.get(k, 0.0) for k in LinkKind]
        if any(w < 0 for w in weights) or not any(w > 0 for w in weights):
            raise ValueError("kind weights must be non-negative and not all zero")
        if not 0 <= self.mutation_rate <= 1:
            raise ValueError("mutation_rate must lie in [0, 1]")
        if self.script is not None and len(self.script) > self.max_links:
            raise ValueError("script is longer than max_links")


class _Builder:
    """Mutable graph under construction with component tracking."""

    def __init__(self, rng: random.Random, spec: GeneratorSpec):
        self.rng = rng
        self.spec = spec
        self.labels: dict[NodeId, Formula] = {}
        self.links: list[Link] = []
        self.comp: dict[NodeId, int] = {}
        self.next_node = 0
        self.next_comp = 0
        self.premise_of: dict[NodeId, int] = {}
        self.source_of: dict[NodeId, int] = {}

    # -- bookkeeping ----------------------------------------------------------

    def fresh_label(self, local: list[Formula]) -> Formula:
        pool = local + list(self.labels.values())
        if pool and self.rng.random() < self.spec.twin_rate:
            return self.rng.choice(pool)
        return random_formula(self.rng, list(self.spec.atom_pool), self.spec.formula_depth)

    def add_node(self, label: Formula, comp: int) -> NodeId:
        nid = f"n{self.next_node}"
        self.next_node += 1
        self.labels[nid] = label
        self.comp[nid] = comp
        return nid

    def new_component(self) -> int:
        self.next_comp += 1
        return self.next_comp - 1

    def spawn(self) -> NodeId:
        return self.add_node(self.fresh_label([]), self.new_component())

    def components(self) -> list[int]:
        return sorted(set(self.comp.values()))

    def merge(self, keep: int, drop: int) -> None:
        for nid, c in self.comp.items():
            if c == drop:
                self.comp[nid] = keep

    def add_link(self, link: Link) -> None:
        i = len(self.links)
        self.links.append(link)
        for p in link.premises:
            self.premise_of[p] = i
        for c in link.conclusions:
            self.source_of[c] = i
        if link.hypothesis is not None:
            self.source_of[link.hypothesis] = i

    def free_conclusions(self, comp: Optional[int] = None) -> list[NodeId]:
        return [n for n in self.labels if n not in self.premise_of and (comp is None or self.comp[n] == comp)]

    def free_premises(self, comp: Optional[int] = None) -> list[NodeId]:
        return [n for n in self.labels if n not in self.source_of and (comp is None or self.comp[n] == comp)]

    def switchables(self) -> int:
        return sum(1 for link in self.links if link.kind in SWITCH_KINDS)

    def cost(self) -> int:
        """Links already used plus the joins still owed to reach one component."""
        return len(self.links) + len(self.components()) - 1

    def graph(self) -> ProofGraph:
        nodes = tuple(Node(n, label) for n, label in self.labels.items())
        return ProofGraph(nodes, tuple(self.links))

    # -- sound steps ------------------------------------------------------------

    def _fill(self, kind: LinkKind, fixed: dict[int, Formula]) -> Optional[list[Formula]]:
        local: list[Formula] = list(fixed.values())

        def fresh(_name: str) -> Formula:
            f = self.fresh_label(local)
            local.append(f)
            return f

        return fill_schema(kind, fixed, fresh)

    def _materialise(self, kind: LinkKind, existing: dict[int, NodeId], labels: list[Formula],
                     comp: int) -> None:
        schema = SCHEMAS[kind]
        slots: list[NodeId] = []
        for idx, label in enumerate(labels):
            slots.append(existing[idx] if idx in existing else self.add_node(label, comp))
        np, nc = len(schema.premises), len(schema.conclusions)
        self.add_link(Link(kind, tuple(slots[:np]), tuple(slots[np:np + nc])))

    def attach(self, kind: LinkKind) -> bool:
        """Non-switchable link sharing exactly one node with the graph."""
        schema = SCHEMAS[kind]
        np = len(schema.premises)
        options: list[tuple[int, NodeId]] = []
        for n in self.free_conclusions():
            options.extend((idx, n) for idx in range(np))
        for n in self.free_premises():
            options.extend((np + idx, n) for idx in range(len(schema.conclusions)))
        self.rng.shuffle(options)
        for idx, n in options:
            labels = self._fill(kind, {idx: self.labels[n]})
            if labels is not None:
                self._materialise(kind, {idx: n}, labels, self.comp[n])
                return True
        return False

    def join(self, kind: LinkKind) -> bool:
        """Focussing link on conclusions of two components, or defocussing link
        above premises of two components."""
        comps = self.components()
        if len(comps) < 2:
            return False
        schema = SCHEMAS[kind]
        np = len(schema.premises)
        focussing = kind in FOCUSSING
        if focussing:
            slot_pair, pool = (0, 1), self.free_conclusions
        else:
            slot_pair, pool = (np, np + 1), self.free_premises
        pairs = [(x, y) for x in pool() for y in pool() if self.comp[x] < self.comp[y]]
        self.rng.shuffle(pairs)
        for x, y in pairs:
            for first, second in ((x, y), (y, x)):
                labels = self._fill(kind, {slot_pair[0]: self.labels[first], slot_pair[1]: self.labels[second]})
                if labels is not None:
                    keep, drop = self.comp[first], self.comp[second]
                    self.merge(keep, drop)
                    self._materialise(kind, {slot_pair[0]: first, slot_pair[1]: second}, labels, keep)
                    return True
        return False

    def glue(self) -> bool:
        """Identify a conclusion of one component with a same-label premise of another."""
        pairs = [(c, p) for c in self.free_conclusions() for p in self.free_premises()
                 if self.comp[c] != self.comp[p] and self.labels[c] == self.labels[p]]
        if not pairs:
            return False
        c, p = self.rng.choice(pairs)
        i = self.premise_of.pop(p, None)
        # an isolated axiom vertex is simply absorbed
        if i is not None:
            link = self.links[i]
            self.links[i] = Link(link.kind, tuple(c if x == p else x for x in link.premises),
                                 link.conclusions, link.hypothesis)
            self.premise_of[c] = i
        self.merge(self.comp[c], self.comp[p])
        del self.labels[p], self.comp[p]
        return True

    def contract(self, allow_twin: bool = False) -> bool:
        pairs = self._twins(self.free_conclusions)
        if not pairs and allow_twin:
            pairs = self._make_twin(conclusion_side=True)
        if not pairs:
            return False
        x, y = self.rng.choice(pairs)
        z = self.add_node(self.labels[x], self.comp[x])
        self.add_link(Link(LinkKind.CONTRACTION, (x, y), (z,)))
        return True

    def expand(self, allow_twin: bool = False) -> bool:
        pairs = self._twins(self.free_premises)
        if not pairs and allow_twin:
            pairs = self._make_twin(conclusion_side=False)
        if not pairs:
            return False
        x, y = self.rng.choice(pairs)
        z = self.add_node(self.labels[x], self.comp[x])
        self.add_link(Link(LinkKind.EXPANSION, (z,), (x, y)))
        return True

    def _make_twin(self, conclusion_side: bool) -> list[tuple[NodeId, NodeId]]:
        """Copy a free conclusion (premise) as a new axiom and connect the copy
        to the same component through its other side: an OrE above it and a
        premise, or an AndI below it and a conclusion."""
        targets = self.free_conclusions() if conclusion_side else self.free_premises()
        if not targets:
            return []
        x = self.rng.choice(targets)
        comp = self.comp[x]
        anchors = self.free_premises(comp) if conclusion_side else self.free_conclusions(comp)
        if not anchors:
            return []
        anchor = self.rng.choice(anchors)
        twin = self.add_node(self.labels[x], self.new_component())
        if conclusion_side:
            top = self.add_node(Or(self.labels[twin], self.labels[anchor]), comp)
            self.add_link(Link(LinkKind.OR_E, (top,), (twin, anchor)))
        else:
            bottom = self.add_node(And(self.labels[anchor], self.labels[twin]), comp)
            self.add_link(Link(LinkKind.AND_I, (anchor, twin), (bottom,)))
        self.comp[twin] = comp
        return [(x, twin) if self.rng.random() < 0.5 else (twin, x)]

    def discharge(self) -> bool:
        pairs = [(x, y) for x in self.free_premises() for y in self.free_conclusions()
                 if x != y and self.comp[x] == self.comp[y]]
        if not pairs:
            return False
        x, y = self.rng.choice(pairs)
        main = self.add_node(Imp(self.labels[x], self.labels[y]), self.comp[x])
        self.add_link(Link(LinkKind.IMP_I, (y,), (main,), hypothesis=x))
        return True

    def _twins(self, pool: Callable[[], list[NodeId]]) -> list[tuple[NodeId, NodeId]]:
        nodes = pool()
        return [(x, y) for i, x in enumerate(nodes) for y in nodes[i + 1:]
                if self.comp[x] == self.comp[y] and self.labels[x] == self.labels[y]]

    def realise(self, kind: LinkKind, budget: int = 1) -> bool:
        """Add one ``kind`` link; with ``budget`` >= 2 a missing twin may be built first."""
        if kind is LinkKind.CONTRACTION:
            return self.contract(allow_twin=budget >= 2)
        if kind is LinkKind.EXPANSION:
            return self.expand(allow_twin=budget >= 2)
        if kind is LinkKind.IMP_I:
            return self.discharge()
        if kind not in SIMPLE and self.rng.random() < 0.5 and self.join(kind):
            return True
        return self.attach(kind)


def _weighted_kind(rng: random.Random, weights: dict) -> LinkKind:
    kinds = [k for k in LinkKind if weights.get(k, 0) > 0]
    return rng.choices(kinds, [weights[k] for k in kinds])[0]


def _run(spec: GeneratorSpec, rng: random.Random) -> ProofGraph:
    b = _Builder(rng, spec)
    b.spawn()
    if spec.script is not None:
        for kind in spec.script:
            if not b.realise(kind):
                raise GeneratorError(f"cannot realise scripted {kind.value} link")
        return b.graph()

    cap = spec.max_switchables
    stalls = 0
    while b.cost() < spec.max_links and stalls < 50:
        roll = rng.random()
        if roll < spec.spawn_rate and b.cost() + 1 < spec.max_links:
            b.spawn()
            continue
        if len(b.components()) > 1 and roll < spec.spawn_rate + spec.glue_rate * 0.5 and b.glue():
            continue
        kind = _weighted_kind(rng, spec.kind_weights)
        if kind in SWITCH_KINDS and cap is not None and b.switchables() >= cap:
            stalls += 1
            continue
        before = b.cost()
        # attaching is free of join debt; joining repays one
        if b.realise(kind, spec.max_links - b.cost()):
            stalls = 0 if b.cost() != before else stalls + 1
        else:
            stalls += 1
    while len(b.components()) > 1:
        if not (b.glue() or b.join(LinkKind.AND_I)):
            raise GeneratorError("could not connect the components")
    return b.graph()


def generate_sound(spec: GeneratorSpec) -> ProofGraph:
    """A random N-Graph, sound by construction; same spec, same graph."""
    spec.validate()
    g = _run(spec, random.Random(spec.seed))
    check_valid(g)
    return g


# -- unsound mutations ---------------------------------------------------------

@dataclass(frozen=True)
class Mutation:
    name: str
    graph: ProofGraph


def _rebuild(labels: dict[NodeId, Formula], links: Sequence[Link]) -> ProofGraph:
    return ProofGraph(tuple(Node(n, f) for n, f in labels.items()), tuple(links))


def _fresh_id(labels: dict[NodeId, Formula]) -> NodeId:
    k = len(labels)
    while f"m{k}" in labels:
        k += 1
    return f"m{k}"


def drop_link(g: ProofGraph, rng: random.Random) -> Optional[ProofGraph]:
    if not g.links:
        return None
    i = rng.randrange(len(g.links))
    return _rebuild(dict(g.label), [l for j, l in enumerate(g.links) if j != i])


def rewire(g: ProofGraph, rng: random.Random) -> Optional[ProofGraph]:
    """Move one link endpoint onto another free node with the same label."""
    free_prem = [n for n in g.node_ids if n not in g.source_of]
    free_conc = [n for n in g.node_ids if n not in g.premise_of]
    options = []
    for i, link in enumerate(g.links):
        for p in link.premises:
            options.extend((i, p, q) for q in free_conc if q != p and g.label[q] == g.label[p] and q not in link.nodes)
        for c in link.conclusions + ((link.hypothesis,) if link.hypothesis else ()):
            options.extend((i, c, q) for q in free_prem if q != c and g.label[q] == g.label[c] and q not in link.nodes)
    if not options:
        return None
    i, old, new = rng.choice(options)
    link = g.links[i]
    swap = (lambda x: new if x == old else x)
    links = list(g.links)
    links[i] = Link(link.kind, tuple(map(swap, link.premises)), tuple(map(swap, link.conclusions)),
                    swap(link.hypothesis) if link.hypothesis is not None else None)
    return _rebuild(dict(g.label), links)


def swap_kind(g: ProofGraph, rng: random.Random, link_index: Optional[int] = None,
              target: Optional[LinkKind] = None) -> Optional[ProofGraph]:
    """Replace a link's kind by another of the same arity class.

    Nodes that no other link touches (graph premises on the premise side,
    graph conclusions on the conclusion side) may be relabelled to fit.
    """
    indices = [link_index] if link_index is not None else list(range(len(g.links)))
    rng.shuffle(indices)
    for i in indices:
        link = g.links[i]
        if link.kind is LinkKind.IMP_I:
            continue
        pool = [target] if target is not None else [k for k in LinkKind if k is not link.kind
                                                    and k is not LinkKind.IMP_I
                                                    and arity_class(k) == arity_class(link.kind)]
        rng.shuffle(pool)
        for kind in pool:
            slots = list(link.premises) + list(link.conclusions)
            np = len(link.premises)
            fixed = {}
            for idx, n in enumerate(slots):
                private = n not in g.source_of if idx < np else n not in g.premise_of
                if not private:
                    fixed[idx] = g.label[n]
            labels = fill_schema(kind, fixed, lambda _v: Atom(rng.choice(("p", "q", "r"))))
            if labels is None:
                continue
            new_labels = dict(g.label)
            for n, f in zip(slots, labels):
                new_labels[n] = f
            links = list(g.links)
            links[i] = Link(kind, link.premises, link.conclusions)
            return _rebuild(new_labels, links)
    return None


def close_cycle(g: ProofGraph, rng: random.Random) -> Optional[ProofGraph]:
    """AndI on two conclusions of the (connected) graph."""
    conc = sorted(conclusions(g))
    if len(conc) < 2:
        return None
    x, y = rng.sample(conc, 2)
    labels = dict(g.label)
    z = _fresh_id(labels)
    labels[z] = And(g.label[x], g.label[y])
    return _rebuild(labels, list(g.links) + [Link(LinkKind.AND_I, (x, y), (z,))])


def contract_across(g: ProofGraph, rng: random.Random) -> Optional[ProofGraph]:
    """Contract a conclusion with a same-label axiom outside the graph."""
    conc = sorted(conclusions(g))
    if not conc:
        return None
    x = rng.choice(conc)
    labels = dict(g.label)
    other = _fresh_id(labels)
    labels[other] = g.label[x]
    z = _fresh_id(labels)
    labels[z] = g.label[x]
    pair = (x, other) if rng.random() < 0.5 else (other, x)
    return _rebuild(labels, list(g.links) + [Link(LinkKind.CONTRACTION, pair, (z,))])


def foreign_discharge(g: ProofGraph, rng: random.Random) -> Optional[ProofGraph]:
    """ImpI whose premise or hypothesis lies outside the graph (or both do)."""
    labels = dict(g.label)
    conc, prem = sorted(conclusions(g)), sorted(premises(g))
    mode = rng.randrange(3)
    if mode == 0 or not conc or not prem:
        y = _fresh_id(labels)
        labels[y] = Atom(rng.choice(("p", "q")))
        x = _fresh_id(labels)
        labels[x] = Atom(rng.choice(("p", "q")))
    elif mode == 1:
        y = rng.choice(conc)
        x = _fresh_id(labels)
        labels[x] = Atom("p")
    else:
        x = rng.choice(prem)
        y = _fresh_id(labels)
        labels[y] = Atom("q")
    main = _fresh_id(labels)
    labels[main] = Imp(labels[x], labels[y])
    return _rebuild(labels, list(g.links) + [Link(LinkKind.IMP_I, (y,), (main,), hypothesis=x)])


MUTATIONS: dict[str, Callable[[ProofGraph, random.Random], Optional[ProofGraph]]] = {
    "drop_link": drop_link,
    "rewire": rewire,
    "swap_kind": swap_kind,
    "close_cycle": close_cycle,
    "contract_across": contract_across,
    "foreign_discharge": foreign_discharge,
}


def mutate(g: ProofGraph, rng: random.Random, name: Optional[str] = None) -> Optional[Mutation]:
    names = [name] if name else list(MUTATIONS)
    rng.shuffle(names)
    for n in names:
        out = MUTATIONS[n](g, rng)
        if out is not None and not validate(out):
            return Mutation(n, out)
    return None


def generate_unsound(spec: GeneratorSpec, retries: int = 200) -> ProofGraph:
    """A structurally valid proof-graph that fails the criterion."""
    return generate_unsound_labelled(spec, retries)[0]


def generate_unsound_labelled(spec: GeneratorSpec, retries: int = 200) -> tuple[ProofGraph, list[str]]:
    """Like ``generate_unsound`` but also names the mutations applied."""
    spec.validate()
    if spec.mutation_rate <= 0:
        raise ValueError("mutation_rate must be positive for unsound generation")
    rng = random.Random(spec.seed)
    for attempt in range(retries):
        base = _run(replace(spec, script=None), random.Random(rng.getrandbits(64)))
        g, applied = base, []
        while True:
            m = mutate(g, rng)
            if m is None:
                break
            g, applied = m.graph, applied + [m.name]
            if rng.random() >= spec.mutation_rate:
                break
        if applied and not is_ngraph(g).sound:
            return g, applied
    raise GeneratorError(f"no unsound mutation found in {retries} attempts")
