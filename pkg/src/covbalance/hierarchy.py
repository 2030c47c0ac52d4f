"""Multi-level aggregation of block variances over a design tree.

A unit's variance is minus the sum of its components' variances; applied
recursively, a uniform tree of depth k yields (-1)^k times the sum of
its leaf deltas at the root.

Tree file format (whitespace-insensitive, `--` comments):

    unit <name> [expect = <int>] { <child>* }
    block <name> delta = <signed integer>
    block <name> rules = <path> iface = <path> [model = <path>]
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Optional

from ._lex import Token, TokenStream, describe
from .errors import ParseError, ValidationError
from .interface import Variance


@dataclass(frozen=True)
class UnitNode:
    """A node in the design decomposition.

    Leaves carry `own_delta` (the block's rule variance plus puncture
    total) and no children; units carry children and no `own_delta`.
    `level` may be left None and is then derived from tree depth.
    """

    name: str
    children: tuple["UnitNode", ...] = ()
    own_delta: Optional[Variance] = None
    external_delta: Optional[Variance] = None
    level: Optional[int] = None


def unit_variance(children_deltas) -> Variance:
    """Variance of a unit with the given component deltas."""
    return -sum(children_deltas)


@dataclass(frozen=True)
class NodeValue:
    path: str
    name: str
    level: int
    value: Variance
    external_delta: Optional[Variance]
    matches_external: Optional[bool]  # None when nothing was declared


@dataclass(frozen=True)
class AggregationResult:
    root_value: Variance
    nodes: tuple[NodeValue, ...]  # depth-first preorder

    @property
    def mismatches(self) -> tuple[NodeValue, ...]:
        return tuple(n for n in self.nodes if n.matches_external is False)


def aggregate_hierarchy(root) -> AggregationResult:
    """Fold the tree bottom-up: unit value = -(sum of child values).

    Declared `external_delta` values are cross-checked against the
    computed ones; a mismatch is a reported finding, not an error.
    """
    nodes: list[Optional[NodeValue]] = []

    def visit(node, path, level) -> Variance:
        if node.level is not None:
            if node.level < 0:
                raise ValidationError(f"{path!r}: level must be non-negative")
            if node.level != level:
                raise ValidationError(
                    f"{path!r} declares level {node.level}, expected {level}"
                )
        index = len(nodes)
        nodes.append(None)
        if node.own_delta is not None:
            if node.children:
                raise ValidationError(f"{path!r} has both a delta and children")
            value = node.own_delta
        elif node.children:
            value = unit_variance(
                visit(child, f"{path}/{child.name}", level + 1)
                for child in node.children
            )
        else:
            raise ValidationError(f"leaf {path!r} has no delta")
        matches = None
        if node.external_delta is not None:
            matches = value == node.external_delta
        nodes[index] = NodeValue(
            path, node.name, level, value, node.external_delta, matches
        )
        return value

    start_level = root.level if root.level is not None else 0
    root_value = visit(root, root.name, start_level)
    return AggregationResult(root_value, tuple(nodes))


@dataclass(frozen=True)
class BlockSource:
    """Analyzer inputs for a file-backed leaf block."""

    rules_path: str
    iface_path: str
    model_path: Optional[str] = None


_KEYWORDS = frozenset({"unit", "block", "delta", "rules", "iface", "model", "expect"})
_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_TREE_TOKEN = re.compile(
    r"""
      (?P<ws>\s+)
    | (?P<comment>--[^\n]*)
    | (?P<sym>[{}=])
    | (?P<int>[+-]?[0-9]+(?![\w./-]))
    | (?P<word>[A-Za-z0-9_./-]+)
    """,
    re.VERBOSE,
)


def _scan(text):
    tokens = []
    line = 1
    line_start = 0
    pos = 0
    while pos < len(text):
        match = _TREE_TOKEN.match(text, pos)
        if not match:
            column = pos - line_start + 1
            raise ParseError(f"unexpected character {text[pos]!r}", line, column)
        kind = match.lastgroup
        value = match.group()
        column = match.start() - line_start + 1
        if kind == "ws":
            newlines = value.count("\n")
            if newlines:
                line += newlines
                line_start = match.start() + value.rfind("\n") + 1
        elif kind == "comment":
            pass
        elif kind == "sym":
            tokens.append(Token("sym", value, line, column))
        elif kind == "int":
            tokens.append(Token("int", value, line, column))
        else:
            token_kind = "keyword" if value in _KEYWORDS else "word"
            tokens.append(Token(token_kind, value, line, column))
        pos = match.end()
    tokens.append(Token("eof", "", line, len(text) - line_start + 1))
    return tokens


def _name(ts) -> str:
    token = ts.expect(kind="word", what="a name")
    if not _NAME_RE.fullmatch(token.text):
        raise ParseError(f"invalid name {token.text!r}", token.line, token.column)
    return token.text


def _int(ts) -> int:
    token = ts.expect(kind="int", what="an integer")
    return int(token.text)


def _path(ts) -> str:
    return ts.expect(kind="word", what="a file path").text


Resolver = Callable[[BlockSource], Variance]


def parse_hierarchy(text, resolve: Optional[Resolver] = None) -> UnitNode:
    """Parse a tree file into a UnitNode.

    `resolve` turns a BlockSource into a delta and is required whenever
    the tree contains `block ... rules = ...` leaves.
    """
    ts = TokenStream(_scan(text))
    node = _parse_node(ts, resolve)
    token = ts.peek()
    if token.kind != "eof":
        raise ParseError(
            f"unexpected {describe(token)} after the root node",
            token.line,
            token.column,
        )
    return node


def _parse_node(ts, resolve) -> UnitNode:
    if ts.accept("unit"):
        name = _name(ts)
        expected = None
        if ts.accept("expect"):
            ts.expect("=")
            expected = _int(ts)
        ts.expect("{")
        children = []
        while not ts.accept("}"):
            if ts.peek().kind == "eof":
                token = ts.peek()
                raise ParseError("missing '}'", token.line, token.column)
            children.append(_parse_node(ts, resolve))
        return UnitNode(name, tuple(children), external_delta=expected)
    if ts.accept("block"):
        name = _name(ts)
        if ts.accept("delta"):
            ts.expect("=")
            return UnitNode(name, own_delta=_int(ts))
        ts.expect("rules")
        ts.expect("=")
        rules_path = _path(ts)
        ts.expect("iface")
        ts.expect("=")
        iface_path = _path(ts)
        model_path = None
        if ts.accept("model"):
            ts.expect("=")
            model_path = _path(ts)
        if resolve is None:
            raise ValidationError(
                f"block {name!r} needs analyzer inputs but no resolver was given"
            )
        source = BlockSource(rules_path, iface_path, model_path)
        return UnitNode(name, own_delta=resolve(source))
    token = ts.peek()
    raise ParseError(
        f"expected 'unit' or 'block', found {describe(token)}",
        token.line,
        token.column,
    )
