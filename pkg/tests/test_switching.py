from __future__ import annotations

import pytest
from checks import nx_defect

from ngraph import fixtures
from ngraph.generate import GeneratorSpec, generate_sound, generate_unsound
from ngraph.graph import GraphBuilder, single_node
from ngraph.switching import (Choice, Defect, MetaSwitching, ResourceLimitExceeded,
                              enumerate_meta_switchings, enumerate_switchings, is_ngraph,
                              is_ngraph_reference, switching_graph)


def test_single_vertex_is_sound():
    assert is_ngraph(single_node("A")).sound


def test_reference_fixtures():
    assert is_ngraph(fixtures.cycle_and()).defect is Defect.CYCLIC
    assert is_ngraph(fixtures.or_contraction()).sound
    assert is_ngraph(fixtures.expansion_and()).sound
    assert not is_ngraph(fixtures.bad_discharge()).sound
    assert is_ngraph(fixtures.discharge_or()).sound


def test_both_choices_of_bad_discharge_are_cyclic():
    g = fixtures.bad_discharge()
    (imp,) = g.switchable_links
    for choice in (Choice.DIRECT, Choice.VIRTUAL):
        assert nx_defect(g, MetaSwitching.of({imp: choice})) is Defect.CYCLIC


def test_enumeration_order_first_link_slowest():
    g = fixtures.flagship()
    assert [s.choices for s in enumerate_meta_switchings(g)] == [((1, Choice.LEFT),), ((1, Choice.RIGHT),)]


def test_virtual_edge_runs_from_hypothesis_to_main():
    g = fixtures.discharge_or()
    s = MetaSwitching.of({1: Choice.VIRTUAL})
    virtual = [e for e in switching_graph(g, s).edges if e.virtual]
    assert [(e.tail, e.head) for e in virtual] == [("AvB", "Imp")]


def test_resource_guard(monkeypatch):
    b = GraphBuilder()
    ava = b.node("A | A")
    a1, a2, a3 = b.node("A"), b.node("A"), b.node("A")
    b.link("OrE", [ava], [a1, a2])
    b.link("Contraction", [a1, a2], [a3])
    g = b.build()
    with pytest.raises(ResourceLimitExceeded):
        is_ngraph(g, max_switchables=0)
    monkeypatch.setenv("NGRAPH_MAX_SWITCHABLES", "0")
    with pytest.raises(ResourceLimitExceeded):
        is_ngraph(g)


def test_plain_switchings_refuse_impi():
    with pytest.raises(ValueError):
        list(enumerate_switchings(fixtures.discharge_or()))
    assert len(list(enumerate_switchings(fixtures.flagship()))) == 2


def test_contraction_across_components_is_disconnected():
    b = GraphBuilder()
    a1, a2, a3 = b.node("A"), b.node("A"), b.node("A")
    b.link("Contraction", [a1, a2], [a3])
    assert is_ngraph(b.build()).defect is Defect.DISCONNECTED


def test_standalone_impi_is_disconnected():
    b = GraphBuilder()
    y, x, main = b.node("B"), b.node("A"), b.node("A -> B")
    b.link("ImpI", [y], [main], hypothesis=x)
    assert is_ngraph(b.build()).defect is Defect.DISCONNECTED


def test_sound_switchings_are_trees_with_n_minus_one_edges():
    for seed in range(40):
        g = generate_sound(GeneratorSpec(seed=seed, max_links=10))
        for s in enumerate_meta_switchings(g):
            assert len(switching_graph(g, s).edges) == len(g.nodes) - 1
            assert nx_defect(g, s) is None


def test_fast_path_matches_reference_and_is_deterministic():
    graphs = [b() for b in fixtures.ALL.values()]
    graphs += [generate_sound(GeneratorSpec(seed=s, max_links=8)) for s in range(30)]
    graphs += [generate_unsound(GeneratorSpec(seed=s, max_links=8)) for s in range(60)]
    for g in graphs:
        fast, slow = is_ngraph(g), is_ngraph_reference(g)
        assert fast == slow
        assert is_ngraph(g) == fast
        if not fast.sound:
            assert nx_defect(g, fast.witness) is fast.defect
