from __future__ import annotations

import pytest

from ngraph import fixtures
from ngraph.formula import has_units
from ngraph.generate import GeneratorSpec, generate_sound
from ngraph.graph import GraphBuilder, end_sequent, single_node
from ngraph.lk import LKRule, lk_check, skeleton
from ngraph.sequentialize import Trace, UnsoundGraph, sequentialize
from ngraph.switching import Defect

AXIOM = ("Axiom",)


@pytest.mark.parametrize("name, expected", [
    ("or_contraction", ("RC", ("OrL", AXIOM, AXIOM))),
    ("discharge_or", ("ImpR", ("OrL", AXIOM, AXIOM))),
    ("flagship", ("Cut", ("RC", ("OrL", AXIOM, AXIOM)), ("OrR1", AXIOM))),
    ("expansion_and", ("LC", ("AndR", AXIOM, AXIOM))),
    ("and_or_chain", ("Cut", ("AndL1", AXIOM), ("OrR1", AXIOM))),
])
def test_fixture_skeletons(name, expected):
    g = fixtures.ALL[name]()
    d = sequentialize(g)
    assert skeleton(d) == expected
    assert d.conclusion == end_sequent(g)
    assert lk_check(d).sound


def test_single_node_is_an_axiom():
    d = sequentialize(single_node("A -> B"))
    assert d.rule is LKRule.AXIOM


def test_trace_records_cases_and_splits():
    trace = Trace()
    sequentialize(fixtures.flagship(), trace=trace)
    assert trace.cases == [(6, "A3"), (4, "A3"), (2, None), (2, None)]
    assert trace.splits == ["A3"]
    assert [split.node for _, split in trace.split_graphs] == ["A3"]


def test_unsound_graphs_are_refused():
    with pytest.raises(UnsoundGraph) as info:
        sequentialize(fixtures.cycle_and())
    assert info.value.verdict.defect is Defect.CYCLIC
    with pytest.raises(UnsoundGraph):
        sequentialize(fixtures.bad_discharge())


def test_units_can_be_encoded_away():
    b = GraphBuilder()
    a, top = b.node("A"), b.node("T")
    b.link("TopSW", [a], [top])
    d = sequentialize(b.build(), encode=True)
    assert lk_check(d).sound
    assert not any(has_units(f) for node in d.walk() for f in node.conclusion.antecedent + node.conclusion.succedent)


def test_verified_sequentialization_on_a_sample():
    for seed in range(80):
        g = generate_sound(GeneratorSpec(seed=3000 + seed, max_links=seed % 16))
        d = sequentialize(g, verify=True)
        assert d.conclusion == end_sequent(g)
        assert lk_check(d).sound
        assert lk_check(sequentialize(g, encode=True)).sound
