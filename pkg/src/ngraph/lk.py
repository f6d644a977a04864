"""Classical sequent calculus with multiset contexts, and an independent checker.

Two-premise rules are multiplicative: the contexts of both premises are
joined in the conclusion. ``TopR`` and ``BotL`` are zero-premise rules that
admit arbitrary side formulas.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

from .formula import (BOTTOM, TOP, And, Formula, Imp, Neg, Or, Sequent, parse_formula,
                      subformulas, to_text)


class LKRule(Enum):
    AXIOM = "Axiom"
    TOP_R = "TopR"
    BOT_L = "BotL"
    LW = "LW"
    RW = "RW"
    LC = "LC"
    RC = "RC"
    AND_L1 = "AndL1"
    AND_L2 = "AndL2"
    AND_R = "AndR"
    OR_R1 = "OrR1"
    OR_R2 = "OrR2"
    OR_L = "OrL"
    IMP_L = "ImpL"
    IMP_R = "ImpR"
    NEG_L = "NegL"
    NEG_R = "NegR"
    CUT = "Cut"

    @classmethod
    def from_name(cls, name: str) -> "LKRule":
        for rule in cls:
            if rule.value == name or rule.name == name:
                return rule
        raise ValueError(f"unknown LK rule {name!r}")


ARITY = {
    LKRule.AXIOM: 0, LKRule.TOP_R: 0, LKRule.BOT_L: 0,
    LKRule.AND_R: 2, LKRule.OR_L: 2, LKRule.IMP_L: 2, LKRule.CUT: 2,
}


def arity(rule: LKRule) -> int:
    return ARITY.get(rule, 1)


@dataclass(frozen=True)
class LKDerivation:
    rule: LKRule
    conclusion: Sequent
    premises: tuple["LKDerivation", ...] = ()
    # principal formula (weakened, contracted, introduced or cut); inferred when absent
    principal: Optional[Formula] = None

    def walk(self) -> Iterator["LKDerivation"]:
        yield self
        for p in self.premises:
            yield from p.walk()

    def size(self) -> int:
        return sum(1 for _ in self.walk())

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)


def end_sequent_of(d: LKDerivation) -> Sequent:
    return d.conclusion


def skeleton(d: LKDerivation) -> tuple:
    """Rule names only: ``(rule, child skeleton, ...)``."""
    return (d.rule.value, *(skeleton(p) for p in d.premises))


def rule_names(d: LKDerivation) -> list[str]:
    """Rule names in post-order (premises before conclusions)."""
    out: list[str] = []
    for p in d.premises:
        out.extend(rule_names(p))
    out.append(d.rule.value)
    return out


# -- checking ------------------------------------------------------------------

class _Mismatch(Exception):
    pass


def _take(bag: Counter, f: Formula, count: int = 1) -> Counter:
    if bag[f] < count:
        raise _Mismatch(f"{to_text(f)} missing")
    out = bag.copy()
    out[f] -= count
    return +out


def _seq(left: Counter, right: Counter) -> Sequent:
    return Sequent(tuple(left.elements()), tuple(right.elements()))


def _expected(rule: LKRule, prem: list[Sequent], f: Formula) -> Sequent:
    """Conclusion of ``rule`` applied to ``prem`` with principal ``f``."""
    if rule is LKRule.AXIOM:
        return Sequent((f,), (f,))
    if rule in (LKRule.LW, LKRule.RW, LKRule.LC, LKRule.RC):
        left, right = prem[0].left, prem[0].right
        if rule is LKRule.LW:
            return _seq(left + Counter([f]), right)
        if rule is LKRule.RW:
            return _seq(left, right + Counter([f]))
        if rule is LKRule.LC:
            return _seq(_take(left, f, 2) + Counter([f]), right)
        return _seq(left, _take(right, f, 2) + Counter([f]))
    if rule in (LKRule.AND_L1, LKRule.AND_L2):
        if not isinstance(f, And):
            raise _Mismatch("principal is not a conjunction")
        part = f.left if rule is LKRule.AND_L1 else f.right
        return _seq(_take(prem[0].left, part) + Counter([f]), prem[0].right)
    if rule in (LKRule.OR_R1, LKRule.OR_R2):
        if not isinstance(f, Or):
            raise _Mismatch("principal is not a disjunction")
        part = f.left if rule is LKRule.OR_R1 else f.right
        return _seq(prem[0].left, _take(prem[0].right, part) + Counter([f]))
    if rule is LKRule.IMP_R:
        if not isinstance(f, Imp):
            raise _Mismatch("principal is not an implication")
        return _seq(_take(prem[0].left, f.left), _take(prem[0].right, f.right) + Counter([f]))
    if rule is LKRule.NEG_L:
        if not isinstance(f, Neg):
            raise _Mismatch("principal is not a negation")
        return _seq(prem[0].left + Counter([f]), _take(prem[0].right, f.sub))
    if rule is LKRule.NEG_R:
        if not isinstance(f, Neg):
            raise _Mismatch("principal is not a negation")
        return _seq(_take(prem[0].left, f.sub), prem[0].right + Counter([f]))
    one, two = prem
    if rule is LKRule.AND_R:
        if not isinstance(f, And):
            raise _Mismatch("principal is not a conjunction")
        right = _take(one.right, f.left) + _take(two.right, f.right) + Counter([f])
        return _seq(one.left + two.left, right)
    if rule is LKRule.OR_L:
        if not isinstance(f, Or):
            raise _Mismatch("principal is not a disjunction")
        left = _take(one.left, f.left) + _take(two.left, f.right) + Counter([f])
        return _seq(left, one.right + two.right)
    if rule is LKRule.IMP_L:
        if not isinstance(f, Imp):
            raise _Mismatch("principal is not an implication")
        left = one.left + _take(two.left, f.right) + Counter([f])
        return _seq(left, _take(one.right, f.left) + two.right)
    if rule is LKRule.CUT:
        return _seq(one.left + _take(two.left, f), _take(one.right, f) + two.right)
    raise _Mismatch(f"no schema for {rule.value}")


def _candidates(d: LKDerivation) -> list[Formula]:
    seen: dict[Formula, None] = {}
    for s in [d.conclusion] + [p.conclusion for p in d.premises]:
        for f in s.antecedent + s.succedent:
            seen.setdefault(f, None)
    return list(seen)


def check_step(d: LKDerivation) -> Optional[str]:
    """None if ``d`` is a correct instance of its rule given its premises' conclusions."""
    if len(d.premises) != arity(d.rule):
        return f"{d.rule.value} takes {arity(d.rule)} premises, got {len(d.premises)}"
    if d.rule is LKRule.TOP_R:
        return None if TOP in d.conclusion.right else "no T in the succedent"
    if d.rule is LKRule.BOT_L:
        return None if BOTTOM in d.conclusion.left else "no F in the antecedent"
    prem = [p.conclusion for p in d.premises]
    options = [d.principal] if d.principal is not None else _candidates(d)
    for f in options:
        try:
            if _expected(d.rule, prem, f) == d.conclusion:
                return None
        except _Mismatch:
            continue
    return f"{d.rule.value} does not conclude {d.conclusion}"


class LKDefect(Enum):
    ARITY = "Arity"
    SCHEMA_MISMATCH = "SchemaMismatch"


@dataclass(frozen=True)
class CheckResult:
    defect: Optional[LKDefect] = None
    # child indices from the root to the offending node
    path: tuple[int, ...] = ()
    message: str = ""
    steps: int = 0

    @property
    def sound(self) -> bool:
        return self.defect is None

    def __str__(self) -> str:
        if self.sound:
            return f"Sound ({self.steps} steps)"
        where = "/".join(map(str, self.path)) or "root"
        return f"Unsound({self.defect.value}) at {where}: {self.message}"


def lk_check(d: LKDerivation) -> CheckResult:
    """Check every node of ``d``; the first defect in pre-order is reported."""
    steps = 0
    stack: list[tuple[LKDerivation, tuple[int, ...]]] = [(d, ())]
    while stack:
        node, path = stack.pop()
        steps += 1
        problem = check_step(node)
        if problem is not None:
            kind = LKDefect.ARITY if len(node.premises) != arity(node.rule) else LKDefect.SCHEMA_MISMATCH
            return CheckResult(kind, path, problem, steps)
        for i in reversed(range(len(node.premises))):
            stack.append((node.premises[i], path + (i,)))
    return CheckResult(steps=steps)


# -- construction shortcuts ------------------------------------------------------

def axiom(f: Formula) -> LKDerivation:
    return LKDerivation(LKRule.AXIOM, Sequent((f,), (f,)), (), f)


def infer(rule: LKRule, principal: Formula, *premises: LKDerivation) -> LKDerivation:
    """Apply ``rule`` and compute its conclusion; raises ValueError if it does not fit."""
    try:
        conclusion = _expected(rule, [p.conclusion for p in premises], principal)
    except _Mismatch as exc:
        raise ValueError(f"{rule.value} with principal {to_text(principal)}: {exc}") from None
    return LKDerivation(rule, conclusion, tuple(premises), principal)


def unit_axiom(rule: LKRule, conclusion: Sequent) -> LKDerivation:
    principal = TOP if rule is LKRule.TOP_R else BOTTOM
    return LKDerivation(rule, conclusion, (), principal)


def weaken_to(d: LKDerivation, target: Sequent) -> LKDerivation:
    """Add LW/RW steps until ``d`` concludes ``target`` (which must contain it)."""
    extra_left = target.left - d.conclusion.left
    extra_right = target.right - d.conclusion.right
    if d.conclusion.left - target.left or d.conclusion.right - target.right:
        raise ValueError("target does not contain the derived sequent")
    for f in sorted(extra_left.elements(), key=to_text):
        d = infer(LKRule.LW, f, d)
    for f in sorted(extra_right.elements(), key=to_text):
        d = infer(LKRule.RW, f, d)
    return d


def formulas_of(d: LKDerivation) -> set[Formula]:
    out: set[Formula] = set()
    for node in d.walk():
        for f in node.conclusion.antecedent + node.conclusion.succedent:
            out.update(subformulas(f))
    return out


# -- text and JSON ---------------------------------------------------------------

def to_json_obj(d: LKDerivation) -> dict:
    obj: dict = {
        "rule": d.rule.value,
        "conclusion": {"antecedent": [to_text(f) for f in d.conclusion.antecedent],
                       "succedent": [to_text(f) for f in d.conclusion.succedent]},
        "premises": [to_json_obj(p) for p in d.premises],
    }
    if d.principal is not None:
        obj["principal"] = to_text(d.principal)
    return obj


def from_json_obj(obj: dict) -> LKDerivation:
    conclusion = obj["conclusion"]
    principal = obj.get("principal")
    return LKDerivation(
        LKRule.from_name(obj["rule"]),
        Sequent(tuple(parse_formula(x) for x in conclusion.get("antecedent", [])),
                tuple(parse_formula(x) for x in conclusion.get("succedent", []))),
        tuple(from_json_obj(p) for p in obj.get("premises", [])),
        parse_formula(principal) if principal is not None else None,
    )


def dumps(d: LKDerivation) -> str:
    return json.dumps(to_json_obj(d), indent=2)


def loads(text: str) -> LKDerivation:
    return from_json_obj(json.loads(text))


def render_text(d: LKDerivation, unicode: bool = True) -> str:
    """Indented tree, conclusion first, one line per rule application."""
    lines: list[str] = []

    def go(node: LKDerivation, depth: int) -> None:
        text = node.conclusion.pretty() if unicode else str(node.conclusion)
        lines.append(f"{'  ' * depth}{text}    [{node.rule.value}]")
        for p in node.premises:
            go(p, depth + 1)

    go(d, 0)
    return "\n".join(lines)
