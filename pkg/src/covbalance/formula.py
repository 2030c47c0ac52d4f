"""Branching-time rule formulas: AST, parser, printer, polarity counting.

Concrete syntax, loosest to tightest: "->" (right-associative), "|", "&",
then the prefix operators "!", "AG", "AX", "AF". "A[ f W g ]", "( f )" and
atoms are self-delimiting. "--" starts a comment that runs to end of line.

A rule file is a sequence of `label : formula ;` entries.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from ._lex import TokenStream, describe, tokenize
from .errors import ParseError, ValidationError


class Formula:
    """Base class for formula AST nodes; every node is immutable."""


@dataclass(frozen=True)
class Atom(Formula):
    """A signal name, the only kind of leaf."""

    name: str


@dataclass(frozen=True)
class Not(Formula):
    operand: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Implies(Formula):
    antecedent: Formula
    consequent: Formula


@dataclass(frozen=True)
class AG(Formula):
    operand: Formula


@dataclass(frozen=True)
class AX(Formula):
    operand: Formula


@dataclass(frozen=True)
class AF(Formula):
    operand: Formula


@dataclass(frozen=True)
class AWeakUntil(Formula):
    """`A[ hold W until ]`: hold must stay true unless until takes over."""

    hold: Formula
    until: Formula


@dataclass(frozen=True)
class Rule:
    label: str
    body: Formula


@dataclass(frozen=True)
class RuleSet:
    rules: tuple[Rule, ...]

    def __post_init__(self):
        seen = set()
        for rule in self.rules:
            if rule.label in seen:
                raise ValidationError(f"duplicate rule label {rule.label!r}")
            seen.add(rule.label)

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)


class PolarityCount(NamedTuple):
    asserted: int
    negated: int


def count_occurrences(formula) -> dict[str, PolarityCount]:
    """Count each atom occurrence as asserted or negated.

    An occurrence is asserted when it sits under an even number of `!`
    on its root-to-leaf path. Implication and the temporal operators do
    not flip polarity. Keys appear in first-occurrence order.
    """
    counts: dict[str, PolarityCount] = {}

    def walk(node, negated):
        if isinstance(node, Atom):
            asserted_n, negated_n = counts.get(node.name, PolarityCount(0, 0))
            if negated:
                counts[node.name] = PolarityCount(asserted_n, negated_n + 1)
            else:
                counts[node.name] = PolarityCount(asserted_n + 1, negated_n)
        elif isinstance(node, Not):
            walk(node.operand, not negated)
        elif isinstance(node, (AG, AX, AF)):
            walk(node.operand, negated)
        elif isinstance(node, (And, Or)):
            walk(node.left, negated)
            walk(node.right, negated)
        elif isinstance(node, Implies):
            walk(node.antecedent, negated)
            walk(node.consequent, negated)
        elif isinstance(node, AWeakUntil):
            walk(node.hold, negated)
            walk(node.until, negated)
        else:
            raise TypeError(f"not a formula node: {node!r}")

    walk(formula, False)
    return counts


# Binding strength; parenthesize a child rendered in a tighter context.
_IMPLIES, _OR, _AND, _PREFIX = 0, 1, 2, 3


def pretty_print(formula) -> str:
    """Render to the concrete syntax; reparsing yields an equal AST."""
    return _render(formula, _IMPLIES)


def _render(node, context):
    if isinstance(node, Atom):
        return node.name
    if isinstance(node, Not):
        return "!" + _render(node.operand, _PREFIX)
    if isinstance(node, (AG, AX, AF)):
        body = _render(node.operand, _PREFIX)
        separator = "" if body.startswith("(") else " "
        return type(node).__name__ + separator + body
    if isinstance(node, AWeakUntil):
        return f"A[{_render(node.hold, _IMPLIES)} W {_render(node.until, _IMPLIES)}]"
    if isinstance(node, And):
        text = _render(node.left, _AND) + " & " + _render(node.right, _AND + 1)
        return f"({text})" if context > _AND else text
    if isinstance(node, Or):
        text = _render(node.left, _OR) + " | " + _render(node.right, _OR + 1)
        return f"({text})" if context > _OR else text
    if isinstance(node, Implies):
        text = (
            _render(node.antecedent, _IMPLIES + 1)
            + " -> "
            + _render(node.consequent, _IMPLIES)
        )
        return f"({text})" if context > _IMPLIES else text
    raise TypeError(f"not a formula node: {node!r}")


_KEYWORDS = frozenset({"AG", "AX", "AF", "A", "W"})
_SYMBOLS = ("->", "!", "&", "|", "(", ")", "[", "]", ":", ";")


class _FormulaParser:
    def __init__(self, text):
        self.ts = TokenStream(tokenize(text, _SYMBOLS, keywords=_KEYWORDS))

    def formula(self):
        node = self.or_chain()
        if self.ts.accept("->"):
            return Implies(node, self.formula())
        return node

    def or_chain(self):
        node = self.and_chain()
        while self.ts.accept("|"):
            node = Or(node, self.and_chain())
        return node

    def and_chain(self):
        node = self.unary()
        while self.ts.accept("&"):
            node = And(node, self.unary())
        return node

    def unary(self):
        ts = self.ts
        if ts.accept("!"):
            return Not(self.unary())
        if ts.accept("AG"):
            return AG(self.unary())
        if ts.accept("AX"):
            return AX(self.unary())
        if ts.accept("AF"):
            return AF(self.unary())
        if ts.accept("A"):
            ts.expect("[")
            hold = self.formula()
            ts.expect("W")
            until = self.formula()
            ts.expect("]")
            return AWeakUntil(hold, until)
        if ts.accept("("):
            node = self.formula()
            ts.expect(")")
            return node
        token = ts.peek()
        if token.kind == "word":
            ts.advance()
            return Atom(token.text)
        raise ParseError(
            f"expected a formula, found {describe(token)}", token.line, token.column
        )


def parse_formula(text) -> Formula:
    """Parse a single formula; trailing input is an error."""
    parser = _FormulaParser(text)
    node = parser.formula()
    token = parser.ts.peek()
    if token.kind != "eof":
        raise ParseError(
            f"unexpected {describe(token)} after formula", token.line, token.column
        )
    return node


def parse_rules(text) -> RuleSet:
    """Parse a rule file: `label : formula ;` entries, file order kept."""
    parser = _FormulaParser(text)
    ts = parser.ts
    rules = []
    while ts.peek().kind != "eof":
        label = ts.expect(kind="word", what="a rule label")
        ts.expect(":")
        body = parser.formula()
        ts.expect(";")
        rules.append(Rule(label.text, body))
    return RuleSet(tuple(rules))
