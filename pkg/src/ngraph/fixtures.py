"""Hand-built proof-graphs used in tests, documentation and CLI demos.

Node ids are chosen so that natural ordering reproduces the documented
tie-breaks. ``python -m ngraph.fixtures DIR`` writes them all as JSON files.
"""

from __future__ import annotations

import sys
from pathlib import Path

from .graph import GraphBuilder, ProofGraph, save


def cycle_and() -> ProofGraph:
    """A|B split by OrE and re-joined by AndI: a 4-cycle, not a derivation."""
    b = GraphBuilder()
    avb, a, bb, anb = b.node("A | B", "AvB"), b.node("A", "A"), b.node("B", "B"), b.node("A & B", "AnB")
    b.link("OrE", [avb], [a, bb])
    b.link("AndI", [a, bb], [anb])
    return b.build()


def or_contraction() -> ProofGraph:
    """A|A |- A: OrE followed by a final contraction."""
    b = GraphBuilder()
    ava = b.node("A | A", "AvA")
    a1, a2, a3 = b.node("A", "A1"), b.node("A", "A2"), b.node("A", "A3")
    b.link("OrE", [ava], [a1, a2])
    b.link("Contraction", [a1, a2], [a3])
    return b.build()


def expansion_and() -> ProofGraph:
    """A |- A&A: an initial expansion feeding AndI."""
    b = GraphBuilder()
    a = b.node("A", "A")
    a1, a2 = b.node("A", "A1"), b.node("A", "A2")
    ana = b.node("A & A", "AnA")
    b.link("Expansion", [a], [a1, a2])
    b.link("AndI", [a1, a2], [ana])
    return b.build()


def bad_discharge() -> ProofGraph:
    """|- A|B with the discharged A also feeding ImpE; cyclic under both ImpI choices."""
    b = GraphBuilder()
    a = b.node("A", "A")
    imp = b.node("A -> A | B", "Imp")
    y = b.node("A | B", "Y")
    a2, b2 = b.node("A", "A2"), b.node("B", "B2")
    y1, y2 = b.node("A | B", "Y1"), b.node("A | B", "Y2")
    b.link("ImpE", [a, imp], [y])
    b.link("OrE", [y], [a2, b2])
    b.link("OrIL", [a2], [y1])
    b.link("OrIR", [b2], [y2])
    b.link("ImpI", [y1], [imp], hypothesis=a)
    return b.build()


def discharge_or() -> ProofGraph:
    """|- (A|B) -> A, B: OrE under a discharged A|B, closed by ImpI."""
    b = GraphBuilder()
    avb = b.node("A | B", "AvB")
    a, bb = b.node("A", "A"), b.node("B", "B")
    imp = b.node("A | B -> A", "Imp")
    b.link("OrE", [avb], [a, bb])
    b.link("ImpI", [a], [imp], hypothesis=avb)
    return b.build()


def flagship() -> ProofGraph:
    """A|A |- A|C with the contraction in the middle, so the proof must be cut."""
    b = GraphBuilder()
    ava = b.node("A | A", "AvA")
    a1, a2, a3 = b.node("A", "A1"), b.node("A", "A2"), b.node("A", "A3")
    avc = b.node("A | C", "AvC")
    b.link("OrE", [ava], [a1, a2])
    b.link("Contraction", [a1, a2], [a3])
    b.link("OrIL", [a3], [avc])
    return b.build()


def and_or_chain() -> ProofGraph:
    b = GraphBuilder()
    anb, a, avc = b.node("A & B", "AnB"), b.node("A", "A"), b.node("A | C", "AvC")
    b.link("AndEL", [anb], [a])
    b.link("OrIL", [a], [avc])
    return b.build()


def empire_example() -> ProofGraph:
    """(~A & Z) | B, A | C |- B, F, C & Z with an expansion duplicating ~A & Z."""
    b = GraphBuilder()
    p1 = b.node("(~A & Z) | B", "P1")
    n = b.node("~A & Z", "N")
    bb = b.node("B", "B")
    n1, n2 = b.node("~A & Z", "N1"), b.node("~A & Z", "N2")
    na = b.node("~A", "nA")
    z = b.node("Z", "Z")
    p2 = b.node("A | C", "P2")
    a, c = b.node("A", "A"), b.node("C", "C")
    bot = b.node("F", "Bot")
    cz = b.node("C & Z", "CZ")
    b.link("OrE", [p1], [n, bb])
    b.link("Expansion", [n], [n1, n2])
    b.link("AndEL", [n1], [na])
    b.link("AndER", [n2], [z])
    b.link("OrE", [p2], [a, c])
    b.link("BotLink", [a, na], [bot])
    b.link("AndI", [c, z], [cz])
    return b.build()


ALL = {
    "cycle_and": cycle_and,
    "or_contraction": or_contraction,
    "expansion_and": expansion_and,
    "bad_discharge": bad_discharge,
    "discharge_or": discharge_or,
    "flagship": flagship,
    "and_or_chain": and_or_chain,
    "empire_example": empire_example,
}


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0] if argv else "fixtures")
    out.mkdir(parents=True, exist_ok=True)
    for name, build in ALL.items():
        save(build(), out / f"{name}.json")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
