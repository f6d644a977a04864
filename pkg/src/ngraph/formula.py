"""Propositional formulas, the text grammar, and multiset sequents."""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, Union


@dataclass(frozen=True)
class Atom:
    name: str

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Neg:
    sub: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Imp:
    left: "Formula"
    right: "Formula"

    def __str__(self) -> str:
        return to_text(self)


@dataclass(frozen=True)
class Top:
    def __str__(self) -> str:
        return "T"


@dataclass(frozen=True)
class Bottom:
    def __str__(self) -> str:
        return "F"


Formula = Union[Atom, Neg, And, Or, Imp, Top, Bottom]

TOP = Top()
BOTTOM = Bottom()

_BINARY = {And: "&", Or: "|", Imp: "->"}
# binding strength; higher binds tighter
_PREC = {Imp: 1, Or: 2, And: 3}


class FormulaSyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


_TOKEN = re.compile(r"\s*(?:(?P<ident>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>->|[~&|()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise FormulaSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = "ident" if m.group("ident") else "op"
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            found = tok[1] or "end of input"
            raise FormulaSyntaxError(f"expected {value!r}, found {found!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self) -> Formula:
        f = self.implication()
        kind, value, pos = self.peek()
        if kind != "end":
            raise FormulaSyntaxError(f"unexpected {value!r}", self.text, pos)
        return f

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[1] == "->":
            self.take()
            return Imp(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        f = self.conjunction()
        while self.peek()[1] == "|":
            self.take()
            f = Or(f, self.conjunction())
        return f

    def conjunction(self) -> Formula:
        f = self.unary()
        while self.peek()[1] == "&":
            self.take()
            f = And(f, self.unary())
        return f

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if value == "~":
            self.take()
            return Neg(self.unary())
        if value == "(":
            self.take()
            f = self.implication()
            self.take(")")
            return f
        if kind == "ident":
            self.take()
            if value == "T":
                return TOP
            if value == "F":
                return BOTTOM
            return Atom(value)
        found = value or "end of input"
        raise FormulaSyntaxError(f"expected a formula, found {found!r}", self.text, pos)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` in the ASCII grammar (``~ & | ->``, constants ``T``/``F``).

    ``&`` binds tighter than ``|``, both associate to the left; ``->`` is the
    loosest and associates to the right.
    """
    return _Parser(text).parse()


def to_text(f: Formula) -> str:
    """Print ``f`` with the fewest parentheses the grammar needs."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bottom):
        return "F"
    if isinstance(f, Neg):
        sub = to_text(f.sub)
        if type(f.sub) in _BINARY:
            sub = f"({sub})"
        return "~" + sub
    op = _BINARY[type(f)]
    prec = _PREC[type(f)]
    left, right = to_text(f.left), to_text(f.right)
    lp = _PREC.get(type(f.left))
    rp = _PREC.get(type(f.right))
    if isinstance(f, Imp):
        if lp is not None and lp <= prec:
            left = f"({left})"
        if rp is not None and rp < prec:
            right = f"({right})"
    else:
        if lp is not None and lp < prec:
            left = f"({left})"
        if rp is not None and rp <= prec:
            right = f"({right})"
    return f"{left} {op} {right}"


_PRETTY_OPS = {And: "∧", Or: "∨", Imp: "→"}


def pretty(f: Formula) -> str:
    """Unicode rendering used in DOT labels and text output."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "⊤"
    if isinstance(f, Bottom):
        return "⊥"
    if isinstance(f, Neg):
        sub = pretty(f.sub)
        return "¬" + (f"({sub})" if type(f.sub) in _BINARY else sub)
    # for readability, mixed binary connectives are always bracketed
    left, right = pretty(f.left), pretty(f.right)
    if type(f.left) in _BINARY and (type(f.left) is not type(f) or isinstance(f, Imp)):
        left = f"({left})"
    if type(f.right) in _BINARY and (type(f.right) is not type(f) or not isinstance(f, Imp)):
        right = f"({right})"
    return f"{left} {_PRETTY_OPS[type(f)]} {right}"


def subformulas(f: Formula) -> Iterator[Formula]:
    yield f
    if isinstance(f, Neg):
        yield from subformulas(f.sub)
    elif isinstance(f, (And, Or, Imp)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


def atoms(f: Formula) -> set[str]:
    return {g.name for g in subformulas(f) if isinstance(g, Atom)}


def encode_units(f: Formula, witness: Formula) -> Formula:
    """Replace ``T`` by ``w | ~w`` and ``F`` by ``w & ~w`` for the given witness ``w``."""
    if isinstance(f, Top):
        return Or(witness, Neg(witness))
    if isinstance(f, Bottom):
        return And(witness, Neg(witness))
    if isinstance(f, Neg):
        return Neg(encode_units(f.sub, witness))
    if isinstance(f, (And, Or, Imp)):
        return type(f)(encode_units(f.left, witness), encode_units(f.right, witness))
    return f


def has_units(f: Formula) -> bool:
    return any(isinstance(g, (Top, Bottom)) for g in subformulas(f))


def _canonical(formulas: Iterable[Formula]) -> tuple[Formula, ...]:
    return tuple(sorted(formulas, key=to_text))


@dataclass(frozen=True)
class Sequent:
    """``antecedent |- succedent`` over multisets of formulas.

    Both sides are stored sorted, so equality and hashing ignore order.
    """

    antecedent: tuple[Formula, ...] = ()
    succedent: tuple[Formula, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "antecedent", _canonical(self.antecedent))
        object.__setattr__(self, "succedent", _canonical(self.succedent))

    @property
    def left(self) -> Counter:
        return Counter(self.antecedent)

    @property
    def right(self) -> Counter:
        return Counter(self.succedent)

    def __str__(self) -> str:
        lhs = ", ".join(to_text(f) for f in self.antecedent)
        rhs = ", ".join(to_text(f) for f in self.succedent)
        return f"{lhs} |- {rhs}".strip()

    def pretty(self) -> str:
        lhs = ", ".join(pretty(f) for f in self.antecedent)
        rhs = ", ".join(pretty(f) for f in self.succedent)
        return f"{lhs} ⊢ {rhs}".strip()


def sequent(antecedent: Iterable[Formula | str] = (), succedent: Iterable[Formula | str] = ()) -> Sequent:
    """Build a sequent, parsing any string entries."""
    def conv(x):
        return parse_formula(x) if isinstance(x, str) else x
    return Sequent(tuple(conv(x) for x in antecedent), tuple(conv(x) for x in succedent))
