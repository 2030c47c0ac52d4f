"""Tiny tokenizer shared by the formula and model parsers.

Produces a flat token list; `--` comments run to end of line. Token kinds
are "word" (identifier), "keyword" (reserved word), "int", "sym"
(operator/punctuation) and a trailing "eof".
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ParseError

_WORD_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_INT_RE = re.compile(r"[0-9]+")


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def describe(token: Token) -> str:
    return "end of input" if token.kind == "eof" else repr(token.text)


def tokenize(text, symbols, keywords=frozenset()):
    """Split `text` into tokens; `symbols` are matched longest-first."""
    ordered_symbols = sorted(symbols, key=len, reverse=True)
    tokens: list[Token] = []
    line = 1
    line_start = 0
    pos = 0
    size = len(text)
    while pos < size:
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            line_start = pos
            continue
        if ch in " \t\r":
            pos += 1
            continue
        if text.startswith("--", pos):
            end = text.find("\n", pos)
            pos = size if end < 0 else end
            continue
        column = pos - line_start + 1
        match = _WORD_RE.match(text, pos)
        if match:
            word = match.group()
            kind = "keyword" if word in keywords else "word"
            tokens.append(Token(kind, word, line, column))
            pos = match.end()
            continue
        match = _INT_RE.match(text, pos)
        if match:
            tokens.append(Token("int", match.group(), line, column))
            pos = match.end()
            continue
        for symbol in ordered_symbols:
            if text.startswith(symbol, pos):
                tokens.append(Token("sym", symbol, line, column))
                pos += len(symbol)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(Token("eof", "", line, size - line_start + 1))
    return tokens


class TokenStream:
    """Cursor over a token list with expect/accept helpers."""

    def __init__(self, tokens):
        self._tokens = tokens
        self._pos = 0

    def peek(self) -> Token:
        return self._tokens[self._pos]

    def advance(self) -> Token:
        token = self._tokens[self._pos]
        if token.kind != "eof":
            self._pos += 1
        return token

    def at(self, text) -> bool:
        token = self.peek()
        return token.kind in ("sym", "keyword") and token.text == text

    def accept(self, text):
        if self.at(text):
            return self.advance()
        return None

    def expect(self, text=None, kind=None, what=None) -> Token:
        token = self.peek()
        if text is not None and self.at(text):
            return self.advance()
        if kind is not None and token.kind == kind:
            return self.advance()
        wanted = what or (repr(text) if text is not None else kind)
        raise ParseError(
            f"expected {wanted}, found {describe(token)}", token.line, token.column
        )
