"""Link kinds, their classification, and the label schema table.

The weakening shapes (``TOP_SW``, ``BOT_SW``, ``TOP_FW``, ``BOT_DW``) are
reconstructed, not read off a drawing; they live only in ``SCHEMAS`` so a
different reading changes this table and nothing else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, fields
from enum import Enum
from typing import Callable, Mapping, Optional

from .formula import BOTTOM, TOP, And, Atom, Formula, Imp, Neg, Or


class LinkKind(Enum):
    AND_EL = "AndEL"
    AND_ER = "AndER"
    OR_IL = "OrIL"
    OR_IR = "OrIR"
    TOP_SW = "TopSW"
    BOT_SW = "BotSW"
    AND_I = "AndI"
    BOT_LINK = "BotLink"
    IMP_E = "ImpE"
    TOP_FW = "TopFW"
    CONTRACTION = "Contraction"
    OR_E = "OrE"
    TOP_LINK = "TopLink"
    IMP_I = "ImpI"
    BOT_DW = "BotDW"
    EXPANSION = "Expansion"

    @classmethod
    def from_name(cls, name: str) -> "LinkKind":
        for kind in cls:
            if kind.value == name or kind.name == name:
                return kind
        raise ValueError(f"unknown link kind {name!r}")


SIMPLE = frozenset({LinkKind.AND_EL, LinkKind.AND_ER, LinkKind.OR_IL, LinkKind.OR_IR,
                    LinkKind.TOP_SW, LinkKind.BOT_SW})
FOCUSSING = frozenset({LinkKind.AND_I, LinkKind.BOT_LINK, LinkKind.IMP_E, LinkKind.TOP_FW,
                       LinkKind.CONTRACTION})
DEFOCUSSING = frozenset({LinkKind.OR_E, LinkKind.TOP_LINK, LinkKind.IMP_I, LinkKind.BOT_DW,
                         LinkKind.EXPANSION})
CONJUNCTIVE = frozenset({LinkKind.AND_I, LinkKind.BOT_LINK, LinkKind.IMP_E, LinkKind.TOP_FW,
                         LinkKind.EXPANSION})
DISJUNCTIVE = frozenset({LinkKind.OR_E, LinkKind.TOP_LINK, LinkKind.IMP_I, LinkKind.BOT_DW,
                         LinkKind.CONTRACTION})
SWITCHABLE = frozenset({LinkKind.CONTRACTION, LinkKind.EXPANSION, LinkKind.IMP_I})


def arity_class(kind: LinkKind) -> str:
    if kind in SIMPLE:
        return "simple"
    if kind in FOCUSSING:
        return "focussing"
    return "defocussing"


@dataclass(frozen=True)
class Var:
    """Schema metavariable."""

    name: str


A, B = Var("A"), Var("B")


@dataclass(frozen=True)
class Schema:
    premises: tuple
    conclusions: tuple
    # ImpI only: label pattern of the discharged hypothesis
    hypothesis: Optional[object] = None

    def slots(self) -> list[object]:
        out = list(self.premises) + list(self.conclusions)
        if self.hypothesis is not None:
            out.append(self.hypothesis)
        return out


SCHEMAS: dict[LinkKind, Schema] = {
    LinkKind.AND_EL: Schema((And(A, B),), (A,)),
    LinkKind.AND_ER: Schema((And(A, B),), (B,)),
    LinkKind.OR_IL: Schema((A,), (Or(A, B),)),
    LinkKind.OR_IR: Schema((B,), (Or(A, B),)),
    LinkKind.TOP_SW: Schema((A,), (TOP,)),
    LinkKind.BOT_SW: Schema((BOTTOM,), (A,)),
    LinkKind.AND_I: Schema((A, B), (And(A, B),)),
    LinkKind.BOT_LINK: Schema((A, Neg(A)), (BOTTOM,)),
    LinkKind.IMP_E: Schema((A, Imp(A, B)), (B,)),
    LinkKind.TOP_FW: Schema((TOP, A), (A,)),
    LinkKind.CONTRACTION: Schema((A, A), (A,)),
    LinkKind.OR_E: Schema((Or(A, B),), (A, B)),
    LinkKind.TOP_LINK: Schema((TOP,), (A, Neg(A))),
    LinkKind.IMP_I: Schema((B,), (Imp(A, B),), hypothesis=A),
    LinkKind.BOT_DW: Schema((A,), (A, BOTTOM)),
    LinkKind.EXPANSION: Schema((A,), (A, A)),
}


def match(pattern, formula: Formula, binding: dict[str, Formula]) -> bool:
    """Extend ``binding`` so that ``pattern`` instantiates to ``formula``.

    On failure ``binding`` may hold partial entries; callers pass a copy.
    """
    if isinstance(pattern, Var):
        bound = binding.get(pattern.name)
        if bound is None:
            binding[pattern.name] = formula
            return True
        return bound == formula
    if type(pattern) is not type(formula):
        return False
    for f in fields(pattern):
        if not match(getattr(pattern, f.name), getattr(formula, f.name), binding):
            return False
    return True


def instantiate(pattern, binding: Mapping[str, Formula]) -> Formula:
    if isinstance(pattern, Var):
        return binding[pattern.name]
    if not fields(pattern):
        return pattern
    return type(pattern)(*(instantiate(getattr(pattern, f.name), binding) for f in fields(pattern)))


def pattern_vars(pattern) -> set[str]:
    if isinstance(pattern, Var):
        return {pattern.name}
    out: set[str] = set()
    for f in fields(pattern):
        out |= pattern_vars(getattr(pattern, f.name))
    return out


def schema_holds(kind: LinkKind, premises: list[Formula], conclusions: list[Formula],
                 hypothesis: Optional[Formula] = None) -> bool:
    schema = SCHEMAS[kind]
    if len(premises) != len(schema.premises) or len(conclusions) != len(schema.conclusions):
        return False
    if (hypothesis is None) != (schema.hypothesis is None):
        return False
    binding: dict[str, Formula] = {}
    pairs = list(zip(schema.premises, premises)) + list(zip(schema.conclusions, conclusions))
    if hypothesis is not None:
        pairs.append((schema.hypothesis, hypothesis))
    return all(match(p, f, binding) for p, f in pairs)


def fill_schema(kind: LinkKind, fixed: Mapping[int, Formula],
                fresh: Callable[[str], Formula]) -> Optional[list[Formula]]:
    """Labels for every slot of ``kind`` agreeing with ``fixed`` (slot index -> label).

    Slots follow ``Schema.slots()`` order. Unconstrained metavariables are drawn
    from ``fresh(var_name)``. Returns None when ``fixed`` is incompatible.
    """
    slots = SCHEMAS[kind].slots()
    binding: dict[str, Formula] = {}
    for idx, label in fixed.items():
        if not match(slots[idx], label, binding):
            return None
    for slot in slots:
        for name in sorted(pattern_vars(slot)):
            if name not in binding:
                binding[name] = fresh(name)
    return [instantiate(slot, binding) for slot in slots]


def random_formula(rng: random.Random, atom_pool: list[str], depth: int = 2) -> Formula:
    """Small random formula; depth 0 is always an atom."""
    if depth <= 0 or rng.random() < 0.45:
        return Atom(rng.choice(atom_pool))
    op = rng.choice(("neg", "and", "or", "imp"))
    if op == "neg":
        return Neg(random_formula(rng, atom_pool, depth - 1))
    ctor = {"and": And, "or": Or, "imp": Imp}[op]
    return ctor(random_formula(rng, atom_pool, depth - 1), random_formula(rng, atom_pool, depth - 1))
