"""The nine acceptance criteria, each at its stated tolerance.

Every test records a one-line verdict that the terminal summary prints.
"""

from __future__ import annotations

import time
from collections import Counter

from acceptance_log import record
from checks import (CORPUS_SIZE, MAX_SWITCHABLES, NEGATIVE_SIZE, check_algebra, check_nesting,
                    check_oracle, check_principal, check_sequentialization, check_terminal, nx_defect)

from ngraph import fixtures
from ngraph.empires import Side, empire_closure
from ngraph.formula import parse_formula, sequent
from ngraph.graph import end_sequent
from ngraph.lk import skeleton
from ngraph.sequentialize import sequentialize
from ngraph.switching import Choice, Defect, MetaSwitching, is_ngraph, switching_graph, tree_defect

TEN_MINUTES = 600.0


def _run_corpus(corpus, check) -> tuple[int, list[str], float]:
    start = time.perf_counter()
    failures: list[str] = []
    for k, g in enumerate(corpus):
        failures.extend(f"graph {k}: {msg}" for msg in check(g))
    return len(corpus), failures, time.perf_counter() - start


def _corpus_ok(corpus) -> bool:
    return len(corpus) >= CORPUS_SIZE and all(len(g.switchable_links) <= MAX_SWITCHABLES for g in corpus)


def test_criterion_1_reference_fixtures():
    start = time.perf_counter()
    problems = []
    left = is_ngraph(fixtures.cycle_and())
    if left.sound or left.defect is not Defect.CYCLIC:
        problems.append(f"cycle_and gave {left}")
    for build in (fixtures.or_contraction, fixtures.expansion_and):
        if not is_ngraph(build()).sound:
            problems.append(f"{build.__name__} rejected")
    bad = fixtures.bad_discharge()
    if is_ngraph(bad).sound:
        problems.append("bad_discharge accepted")
    (imp,) = bad.switchable_links
    for choice in (Choice.DIRECT, Choice.VIRTUAL):
        s = MetaSwitching.of({imp: choice})
        if tree_defect(bad.node_ids, switching_graph(bad, s).edges) is not Defect.CYCLIC:
            problems.append(f"bad_discharge {choice.value} switching is not cyclic")
        if nx_defect(bad, s) is not Defect.CYCLIC:
            problems.append(f"networkx disagrees on the {choice.value} switching")
    right = fixtures.discharge_or()
    if not is_ngraph(right).sound:
        problems.append("discharge_or rejected")
    if end_sequent(right) != sequent([], ["A | B -> A", "B"]):
        problems.append(f"discharge_or end sequent {end_sequent(right)}")
    elapsed = time.perf_counter() - start
    passed = not problems and elapsed < 1.0
    record(1, "reference fixtures classify exactly", passed,
           f"{len(problems)} problems, {elapsed:.3f}s (limit 1s)")
    assert not problems, problems
    assert elapsed < 1.0


def test_criterion_2_empire_reproduction():
    g = fixtures.empire_example()
    north = Counter(g.label[n] for n in empire_closure(g, "A", Side.NORTH).members)
    south = Counter(g.label[n] for n in empire_closure(g, "A", Side.SOUTH).members)
    want_north = Counter(parse_formula(t) for t in ["A", "A | C", "C", "C & Z", "Z", "~A & Z"])
    want_south = Counter(parse_formula(t) for t in ["A", "F", "~A", "~A & Z"])
    passed = north == want_north and south == want_south
    record(2, "empire reproduction", passed,
           f"north {'exact' if north == want_north else 'MISMATCH'}, "
           f"south {'exact' if south == want_south else 'MISMATCH'}")
    assert north == want_north
    assert south == want_south


def test_criterion_3_oracle_equivalence(corpus):
    n, failures, elapsed = _run_corpus(corpus, lambda g: check_oracle(g, per_node=True))
    passed = not failures and elapsed <= TEN_MINUTES and _corpus_ok(corpus)
    record(3, "closure equals intersection oracle", passed,
           f"{n} graphs, {len(failures)} mismatches, {elapsed:.1f}s (limit 600s)")
    assert _corpus_ok(corpus)
    assert not failures, failures[:5]
    assert elapsed <= TEN_MINUTES


def test_criterion_4_principal_and_terminal(corpus):
    n, failures, elapsed = _run_corpus(corpus, lambda g: check_principal(g) + check_terminal(g))
    passed = not failures and _corpus_ok(corpus)
    record(4, "principal identity and terminal corollaries", passed,
           f"{n} graphs, {len(failures)} mismatches")
    assert _corpus_ok(corpus)
    assert not failures, failures[:5]


def test_criterion_5_nesting(corpus):
    n, failures, elapsed = _run_corpus(corpus, check_nesting)
    pairs = sum(len(g.nodes) * (len(g.nodes) - 1) for g in corpus)
    record(5, "empire nesting", not failures, f"{n} graphs, {pairs} ordered pairs, {len(failures)} counterexamples")
    assert not failures, failures[:5]


def test_criterion_6_sub_ngraph_algebra(corpus):
    n, failures, elapsed = _run_corpus(corpus, check_algebra)
    record(6, "union and intersection of sub-N-Graphs", not failures,
           f"{n} graphs, {len(failures)} counterexamples, {elapsed:.1f}s")
    assert not failures, failures[:5]


def test_criterion_7_sequentialization(corpus):
    n, failures, elapsed = _run_corpus(corpus, check_sequentialization)
    passed = not failures and elapsed <= TEN_MINUTES and _corpus_ok(corpus)
    record(7, "sequentialization soundness", passed,
           f"{n} graphs, {len(failures)} failures, {elapsed:.1f}s (limit 600s)")
    assert not failures, failures[:5]
    assert elapsed <= TEN_MINUTES


GOLDEN = {
    "or_contraction": ("RC", ("OrL", ("Axiom",), ("Axiom",))),
    "discharge_or": ("ImpR", ("OrL", ("Axiom",), ("Axiom",))),
    "flagship": ("Cut", ("RC", ("OrL", ("Axiom",), ("Axiom",))), ("OrR1", ("Axiom",))),
}


def test_criterion_8_golden_derivations():
    got = {name: skeleton(sequentialize(fixtures.ALL[name]())) for name in GOLDEN}
    wrong = [name for name in GOLDEN if got[name] != GOLDEN[name]]
    record(8, "golden derivation skeletons", not wrong, f"{len(GOLDEN) - len(wrong)}/{len(GOLDEN)} exact")
    assert got == GOLDEN


def test_criterion_9_negative_corpus(negative_corpus):
    failures = []
    for k, g in enumerate(negative_corpus):
        verdict = is_ngraph(g)
        if verdict.sound:
            failures.append(f"graph {k} accepted")
            continue
        independent = nx_defect(g, verdict.witness)
        if independent is not verdict.defect:
            failures.append(f"graph {k}: witness defect {verdict.defect} but networkx says {independent}")
    n = len(negative_corpus)
    passed = not failures and n >= NEGATIVE_SIZE
    record(9, "negative corpus rejected with verified witnesses", passed,
           f"{n} graphs, {len(failures)} failures")
    assert n >= NEGATIVE_SIZE
    assert not failures, failures[:5]
