"""Proof-graphs for classical propositional logic: soundness checking,
empires, split nodes, and translation into sequent calculus."""

from __future__ import annotations

from .empires import Empire, EmpireCache, Side, empire_by_intersection, empire_closure, principal_switching, s_component, whole_empire
from .formula import Sequent, parse_formula, pretty, sequent, to_text
from .generate import GeneratorSpec, generate_sound, generate_unsound
from .graph import GraphBuilder, InvalidGraph, ProofGraph, end_sequent, load, loads, save, validate
from .links import LinkKind
from .lk import LKDerivation, LKRule, end_sequent_of, lk_check
from .order import NoSplit, PreconditionViolated, Split, find_split, order_lt
from .sequentialize import sequentialize, single_link_derivation
from .switching import Choice, MetaSwitching, ResourceLimitExceeded, Verdict, is_ngraph, switching_graph

__all__ = [
    "Choice", "Empire", "EmpireCache", "GeneratorSpec", "GraphBuilder", "InvalidGraph", "LKDerivation",
    "LKRule", "LinkKind", "MetaSwitching", "NoSplit", "PreconditionViolated", "ProofGraph",
    "ResourceLimitExceeded", "Sequent", "Side", "Split", "Verdict", "empire_by_intersection",
    "empire_closure", "end_sequent", "end_sequent_of", "find_split", "generate_sound", "generate_unsound",
    "is_ngraph", "lk_check", "load", "loads", "order_lt", "parse_formula", "pretty", "principal_switching",
    "s_component", "save", "sequent", "sequentialize", "single_link_derivation", "switching_graph",
    "to_text", "validate", "whole_empire",
]
