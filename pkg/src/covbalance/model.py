"""State-machine model subset: parser and puncture-pressure accounting.

Grammar (case-sensitive keywords, `--` comments):

    model    := "var" vardecl+ item*
    vardecl  := id ("," id)* ":" "boolean" ";"
    item     := "assign"                          -- section marker, skipped
              | "init" "(" id ")" ":=" expr ";"
              | "next" "(" id ")" ":=" expr ";"
              | "define" id ":=" expr ";"
    expr     := orexpr | caseexpr | ifexpr
    orexpr   := andexpr ( "|" andexpr )*
    andexpr  := unary ( "&" unary )*
    unary    := "!" unary | id | "0" | "1"
              | "{" const ("," const)* "}"
              | "next" "(" id ")" | "(" expr ")"
    caseexpr := "case" ( expr ":" expr ";" )+ "esac"
    ifexpr   := "if" expr "then" expr "else" expr "endif"

The "assign" marker may appear before any item; real listings put
"define" items both before and after it. `next(x)` inside an expression
reads x's update and is kept as a plain reference to x.

Pressure accounting is purely syntactic: a model variable (or define
target) that is not a boundary signal is a puncture, and its pressure is
minus the number of distinct statements whose right-hand side mentions
it, however many occurrences or negations each statement contains.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Union

from ._lex import TokenStream, describe, tokenize
from .errors import ParseError, ValidationError
from .interface import Variance


class Expr:
    """Base class for model expression nodes."""


@dataclass(frozen=True)
class VarRef(Expr):
    name: str


@dataclass(frozen=True)
class Const(Expr):
    value: int  # 0 or 1


@dataclass(frozen=True)
class NondetSet(Expr):
    """Nondeterministic choice among constants, `{0, 1}`."""

    values: tuple[int, ...]


@dataclass(frozen=True)
class Not(Expr):
    operand: Expr


@dataclass(frozen=True)
class And(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Or(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Case(Expr):
    """(guard, value) branches, evaluated top-down."""

    branches: tuple[tuple[Expr, Expr], ...]


@dataclass(frozen=True)
class IfThenElse(Expr):
    condition: Expr
    then_value: Expr
    else_value: Expr


@dataclass(frozen=True)
class VarDecl:
    name: str
    kind: str = "boolean"


@dataclass(frozen=True)
class Init:
    target: str
    expr: Expr


@dataclass(frozen=True)
class Next:
    target: str
    expr: Expr


@dataclass(frozen=True)
class Define:
    target: str
    expr: Expr


Statement = Union[Init, Next, Define]


def statement_label(stmt) -> str:
    if isinstance(stmt, Init):
        return f"init({stmt.target})"
    if isinstance(stmt, Next):
        return f"next({stmt.target})"
    return f"define {stmt.target}"


@dataclass(frozen=True)
class ModelAst:
    variables: tuple[VarDecl, ...]
    items: tuple[Statement, ...]  # source order

    @property
    def inits(self):
        return tuple(i for i in self.items if isinstance(i, Init))

    @property
    def nexts(self):
        return tuple(i for i in self.items if isinstance(i, Next))

    @property
    def defines(self):
        return tuple(i for i in self.items if isinstance(i, Define))

    @property
    def declared_names(self) -> tuple[str, ...]:
        """Variable names plus define targets, declaration order, no repeats."""
        names = [v.name for v in self.variables]
        seen = set(names)
        for item in self.items:
            if isinstance(item, Define) and item.target not in seen:
                names.append(item.target)
                seen.add(item.target)
        return tuple(names)


_KEYWORDS = frozenset(
    {
        "var",
        "assign",
        "init",
        "next",
        "define",
        "case",
        "esac",
        "if",
        "then",
        "else",
        "endif",
        "boolean",
    }
)
_SYMBOLS = (":=", ":", ";", ",", "(", ")", "{", "}", "!", "&", "|")


class _ModelParser:
    def __init__(self, text):
        self.ts = TokenStream(tokenize(text, _SYMBOLS, keywords=_KEYWORDS))
        self.refs = []  # every name token referenced inside an expression

    def parse(self) -> ModelAst:
        ts = self.ts
        ts.expect("var")
        variables: list[VarDecl] = []
        declared: set[str] = set()
        while ts.peek().kind == "word":
            names = [ts.expect(kind="word", what="a variable name")]
            while ts.accept(","):
                names.append(ts.expect(kind="word", what="a variable name"))
            ts.expect(":")
            ts.expect("boolean")
            ts.expect(";")
            for token in names:
                if token.text in declared:
                    raise ParseError(
                        f"duplicate variable {token.text!r}", token.line, token.column
                    )
                declared.add(token.text)
                variables.append(VarDecl(token.text))
        if not variables:
            token = ts.peek()
            raise ParseError(
                "expected at least one variable declaration", token.line, token.column
            )
        items: list[Statement] = []
        seen: set[tuple[str, str]] = set()
        while ts.peek().kind != "eof":
            if ts.accept("assign"):
                continue
            if ts.at("init") or ts.at("next"):
                keyword = ts.advance()
                ts.expect("(")
                target = ts.expect(kind="word", what="a variable name")
                ts.expect(")")
                ts.expect(":=")
                expr = self.expr()
                ts.expect(";")
                if target.text not in declared:
                    raise ParseError(
                        f"{keyword.text} target {target.text!r} is not a declared variable",
                        target.line,
                        target.column,
                    )
                key = (keyword.text, target.text)
                if key in seen:
                    raise ParseError(
                        f"duplicate {keyword.text}({target.text})",
                        keyword.line,
                        keyword.column,
                    )
                seen.add(key)
                node = Init if keyword.text == "init" else Next
                items.append(node(target.text, expr))
            elif ts.at("define"):
                ts.advance()
                target = ts.expect(kind="word", what="a define target")
                ts.expect(":=")
                expr = self.expr()
                ts.expect(";")
                key = ("define", target.text)
                if key in seen:
                    raise ParseError(
                        f"duplicate define {target.text!r}", target.line, target.column
                    )
                seen.add(key)
                items.append(Define(target.text, expr))
            else:
                token = ts.peek()
                raise ParseError(
                    f"expected 'init', 'next' or 'define', found {describe(token)}",
                    token.line,
                    token.column,
                )
        model = ModelAst(tuple(variables), tuple(items))
        known = set(model.declared_names)
        for token in self.refs:
            if token.text not in known:
                raise ParseError(
                    f"reference to undeclared name {token.text!r}",
                    token.line,
                    token.column,
                )
        return model

    def expr(self):
        if self.ts.at("case"):
            return self.case_expr()
        if self.ts.at("if"):
            return self.if_expr()
        return self.or_expr()

    def case_expr(self):
        ts = self.ts
        opener = ts.expect("case")
        branches = []
        while not ts.accept("esac"):
            if ts.peek().kind == "eof":
                raise ParseError("unterminated case", opener.line, opener.column)
            guard = self.expr()
            ts.expect(":")
            value = self.expr()
            ts.expect(";")
            branches.append((guard, value))
        if not branches:
            raise ParseError(
                "a case needs at least one branch", opener.line, opener.column
            )
        return Case(tuple(branches))

    def if_expr(self):
        ts = self.ts
        ts.expect("if")
        condition = self.expr()
        ts.expect("then")
        then_value = self.expr()
        ts.expect("else")
        else_value = self.expr()
        ts.expect("endif")
        return IfThenElse(condition, then_value, else_value)

    def or_expr(self):
        node = self.and_expr()
        while self.ts.accept("|"):
            node = Or(node, self.and_expr())
        return node

    def and_expr(self):
        node = self.unary()
        while self.ts.accept("&"):
            node = And(node, self.unary())
        return node

    def unary(self):
        ts = self.ts
        if ts.accept("!"):
            return Not(self.unary())
        if ts.accept("("):
            node = self.expr()
            ts.expect(")")
            return node
        if ts.at("next"):
            ts.advance()
            ts.expect("(")
            name = ts.expect(kind="word", what="a variable name")
            ts.expect(")")
            self.refs.append(name)
            return VarRef(name.text)
        token = ts.peek()
        if token.kind == "word":
            ts.advance()
            self.refs.append(token)
            return VarRef(token.text)
        if token.kind == "int":
            return Const(self._const())
        if ts.accept("{"):
            values = [self._const()]
            while ts.accept(","):
                values.append(self._const())
            ts.expect("}")
            return NondetSet(tuple(values))
        raise ParseError(
            f"expected an expression, found {describe(token)}",
            token.line,
            token.column,
        )

    def _const(self) -> int:
        token = self.ts.expect(kind="int", what="'0' or '1'")
        if token.text not in ("0", "1"):
            raise ParseError(
                f"only '0' and '1' constants are allowed, found {token.text!r}",
                token.line,
                token.column,
            )
        return int(token.text)


def parse_model(text) -> ModelAst:
    """Parse and validate a model file."""
    return _ModelParser(text).parse()


# Expression binding strength; case/if need parens under any operator.
_LOOSE, _OR_LEVEL, _AND_LEVEL, _UNARY_LEVEL = 0, 1, 2, 3


def _render(expr, context):
    if isinstance(expr, VarRef):
        return expr.name
    if isinstance(expr, Const):
        return str(expr.value)
    if isinstance(expr, NondetSet):
        return "{" + ", ".join(str(v) for v in expr.values) + "}"
    if isinstance(expr, Not):
        return "!" + _render(expr.operand, _UNARY_LEVEL)
    if isinstance(expr, And):
        text = _render(expr.left, _AND_LEVEL) + " & " + _render(expr.right, _AND_LEVEL + 1)
        return f"({text})" if context > _AND_LEVEL else text
    if isinstance(expr, Or):
        text = _render(expr.left, _OR_LEVEL) + " | " + _render(expr.right, _OR_LEVEL + 1)
        return f"({text})" if context > _OR_LEVEL else text
    if isinstance(expr, Case):
        inner = " ".join(
            f"{_render(guard, _LOOSE)} : {_render(value, _LOOSE)};"
            for guard, value in expr.branches
        )
        text = f"case {inner} esac"
        return f"({text})" if context > _LOOSE else text
    if isinstance(expr, IfThenElse):
        text = (
            f"if {_render(expr.condition, _LOOSE)}"
            f" then {_render(expr.then_value, _LOOSE)}"
            f" else {_render(expr.else_value, _LOOSE)} endif"
        )
        return f"({text})" if context > _LOOSE else text
    raise TypeError(f"not a model expression: {expr!r}")


def pretty_print_model(model) -> str:
    """Render to the concrete syntax; reparsing yields an equal AST."""
    lines = ["var"]
    lines.append("  " + ", ".join(v.name for v in model.variables) + " : boolean;")
    lines.append("assign")
    for item in model.items:
        if isinstance(item, Define):
            lines.append(f"  define {item.target} := {_render(item.expr, _LOOSE)};")
        else:
            keyword = "init" if isinstance(item, Init) else "next"
            lines.append(f"  {keyword}({item.target}) := {_render(item.expr, _LOOSE)};")
    return "\n".join(lines) + "\n"


class Classification(NamedTuple):
    boundary: frozenset[str]
    punctures: frozenset[str]


def classify_variables(model, iface) -> Classification:
    """Split the model's declared names into boundary signals and punctures.

    Every declared variable or define target that does not match an
    interface signal is internal logic, i.e. a puncture.
    """
    declared = model.declared_names
    boundary = frozenset(n for n in declared if n in iface.signals)
    punctures = frozenset(n for n in declared if n not in iface.signals)
    return Classification(boundary, punctures)


def _references(expr, name) -> bool:
    if isinstance(expr, VarRef):
        return expr.name == name
    if isinstance(expr, (Const, NondetSet)):
        return False
    if isinstance(expr, Not):
        return _references(expr.operand, name)
    if isinstance(expr, (And, Or)):
        return _references(expr.left, name) or _references(expr.right, name)
    if isinstance(expr, Case):
        return any(
            _references(guard, name) or _references(value, name)
            for guard, value in expr.branches
        )
    if isinstance(expr, IfThenElse):
        return (
            _references(expr.condition, name)
            or _references(expr.then_value, name)
            or _references(expr.else_value, name)
        )
    raise TypeError(f"not a model expression: {expr!r}")


def _referencing_items(model, name):
    return tuple(item for item in model.items if _references(item.expr, name))


def puncture_pressure(model, puncture, iface) -> Variance:
    """Pressure of one puncture: minus its referencing-statement count.

    Each init/next/define statement counts once if its right-hand side
    mentions the puncture at all (self-references included); internal
    variables act as sources, hence the negative sign.
    """
    if puncture not in classify_variables(model, iface).punctures:
        raise ValidationError(f"{puncture!r} is not a puncture of this model")
    return -len(_referencing_items(model, puncture))


@dataclass(frozen=True)
class PunctureEntry:
    name: str
    statements: tuple[str, ...]  # labels of referencing statements, source order
    pressure: Variance


@dataclass(frozen=True)
class PunctureReport:
    entries: tuple[PunctureEntry, ...]  # declaration order
    total: Variance


def model_puncture_total(model, iface) -> PunctureReport:
    """Pressure of every discovered puncture plus the grand total."""
    punctures = classify_variables(model, iface).punctures
    entries = []
    for name in model.declared_names:
        if name not in punctures:
            continue
        statements = tuple(
            statement_label(item) for item in _referencing_items(model, name)
        )
        entries.append(PunctureEntry(name, statements, -len(statements)))
    return PunctureReport(tuple(entries), sum(e.pressure for e in entries))
