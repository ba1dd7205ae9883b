"""Parser and printer for the one-line fuzzy rule language.

Grammar::

    rule    := "if" clause ("and" clause)* "->" clause ["weight" NUMBER]
    clause  := "(" IDENT "is" ["not"] IDENT ")"
    IDENT   := [A-Za-z_][A-Za-z0-9_]*
    NUMBER  := digits, optional fraction, optional exponent

The arrow may be written ``->`` or the typographic ``→``; the printer always
emits ``->``.  An omitted weight clause means weight 1.0 and is never printed.
Identifiers are case-sensitive.  ``not`` binds to the set label only; there is
no ``or`` connective and no antecedent-level negation.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrankError

KEYWORDS = {
    "if": "kw_if",
    "and": "kw_and",
    "is": "kw_is",
    "not": "kw_not",
    "weight": "kw_weight",
}

_TOKEN_RE = re.compile(
    r"(?P<arrow>->|→)"
    r"|(?P<lparen>\()"
    r"|(?P<rparen>\))"
    r"|(?P<number>[0-9]+(?:\.[0-9]+)?(?:[eE][+-]?[0-9]+)?)"
    r"|(?P<identifier>[A-Za-z_][A-Za-z0-9_]*)"
)


@dataclass(frozen=True)
class RuleToken:
    kind: str
    lexeme: str
    line: int
    column: int


@dataclass(frozen=True)
class RuleClause:
    variable: str
    label: str
    negated: bool = False


@dataclass(frozen=True)
class RuleAst:
    antecedent: tuple[RuleClause, ...]
    consequent: RuleClause
    weight: float = 1.0


class ParseError(FrankError):
    """Syntax error, carrying the 1-based position and the expected kinds."""

    def __init__(self, message: str, line: int, column: int,
                 expected: tuple[str, ...] = ()):
        self.position = (line, column)
        self.expected = expected
        super().__init__(f"line {line}, column {column}: {message}")


def _lex(source: str, line: int) -> list[RuleToken]:
    tokens: list[RuleToken] = []
    pos = 0
    while pos < len(source):
        if source[pos].isspace():
            pos += 1
            continue
        match = _TOKEN_RE.match(source, pos)
        if match is None:
            raise ParseError(
                f"found {source[pos]!r}, expected identifier, number, "
                "parenthesis, or arrow",
                line, pos + 1,
                ("identifier", "number", "lparen", "rparen", "arrow"),
            )
        kind = match.lastgroup or ""
        lexeme = match.group()
        if kind == "identifier" and lexeme in KEYWORDS:
            kind = KEYWORDS[lexeme]
        tokens.append(RuleToken(kind, lexeme, line, pos + 1))
        pos = match.end()
    return tokens


class _Parser:
    def __init__(self, source: str, line: int):
        self.source = source
        self.line = line
        self.tokens = _lex(source, line)
        self.pos = 0

    def _peek(self) -> RuleToken | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, expected: tuple[str, ...]) -> ParseError:
        token = self._peek()
        want = " or ".join(expected)
        if token is None:
            column = len(self.source) + 1
            return ParseError(
                f"found end of line, expected {want}", self.line, column, expected
            )
        return ParseError(
            f"found {token.lexeme!r}, expected {want}",
            token.line, token.column, expected,
        )

    def _expect(self, *kinds: str) -> RuleToken:
        token = self._peek()
        if token is None or token.kind not in kinds:
            raise self._fail(kinds)
        self.pos += 1
        return token

    def _clause(self) -> RuleClause:
        self._expect("lparen")
        variable = self._expect("identifier")
        self._expect("kw_is")
        negated = False
        if (token := self._peek()) is not None and token.kind == "kw_not":
            self.pos += 1
            negated = True
        label = self._expect("identifier")
        self._expect("rparen")
        return RuleClause(variable.lexeme, label.lexeme, negated)

    def rule(self) -> RuleAst:
        self._expect("kw_if")
        antecedent = [self._clause()]
        while (token := self._peek()) is not None and token.kind == "kw_and":
            self.pos += 1
            antecedent.append(self._clause())
        self._expect("arrow")
        consequent = self._clause()
        weight = 1.0
        if (token := self._peek()) is not None and token.kind == "kw_weight":
            self.pos += 1
            number = self._expect("number")
            weight = float(number.lexeme)
            if not 0.0 < weight <= 1.0:
                raise ParseError(
                    f"weight {number.lexeme} outside (0, 1]",
                    number.line, number.column, ("number",),
                )
        if self._peek() is not None:
            raise self._fail(("end of line",))
        return RuleAst(tuple(antecedent), consequent, weight)


def parse_rule(source: str, line: int = 1) -> RuleAst:
    """Parse one rule line; raises :class:`ParseError` on any deviation."""
    return _Parser(source, line).rule()


def parse_rules_block(source: str) -> list[RuleAst]:
    """Parse a multi-line block, one rule per non-empty, non-comment line.

    All-or-nothing: the first error aborts, carrying its real line number.
    """
    rules = []
    for number, raw in enumerate(source.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        rules.append(parse_rule(raw, line=number))
    return rules


def _format_clause(clause: RuleClause) -> str:
    negation = "not " if clause.negated else ""
    return f"({clause.variable} is {negation}{clause.label})"


def print_rule(ast: RuleAst) -> str:
    """Canonical one-line form; ``parse_rule(print_rule(ast)) == ast``."""
    parts = ["if", _format_clause(ast.antecedent[0])]
    for clause in ast.antecedent[1:]:
        parts.append("and")
        parts.append(_format_clause(clause))
    parts.append("->")
    parts.append(_format_clause(ast.consequent))
    if ast.weight != 1.0:
        parts.append("weight")
        parts.append(repr(ast.weight))
    return " ".join(parts)
