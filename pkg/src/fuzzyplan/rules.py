"""Tokenizer, recursive-descent parser and canonical renderer for rule text.

Grammar::

    rule   := IF clause (AND clause)* THEN ident IS ident [;]
    clause := "(" ident IS ident ")"

Keywords are case-insensitive; identifiers are case-folded to lowercase.
``#`` starts a comment running to end of line.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from .errors import KbDocumentError

KEYWORDS = frozenset({"if", "and", "then", "is"})

_IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*")
_NUMBER_RE = re.compile(r"-?\d+(\.\d+)?")
_PUNCT = {"(": "lparen", ")": "rparen", "{": "lbrace", "}": "rbrace", ",": "comma", ";": "semicolon"}


@dataclass(frozen=True)
class Token:
    kind: str  # keyword name, "ident", "number", punct name or "eof"
    text: str  # raw lexeme as it appears in the source ("" for eof)
    line: int  # 1-based
    col: int  # 1-based

    @property
    def value(self) -> str:
        """Case-folded lexeme; the form identifiers and keywords are compared by."""
        return self.text.lower()


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    line: int
    col: int
    message: str
    code: str

    def __str__(self) -> str:
        return f"{self.line}:{self.col}: {self.severity}[{self.code}] {self.message}"


@dataclass(frozen=True)
class Clause:
    variable: str
    term: str


@dataclass(frozen=True)
class Rule:
    antecedents: tuple[Clause, ...]
    consequent: Clause
    id: str | None = field(default=None, compare=False)
    line: int = field(default=1, compare=False)
    col: int = field(default=1, compare=False)


def tokenize(source: str) -> tuple[list[Token], list[Diagnostic]]:
    """Scan ``source`` into tokens; illegal characters become error diagnostics
    and scanning continues. A trailing ``eof`` token is always appended."""
    tokens: list[Token] = []
    diagnostics: list[Diagnostic] = []
    line, col, i = 1, 1, 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            j = source.find("\n", i)
            if j == -1:
                j = n
            col += j - i
            i = j
            continue
        if ch in _PUNCT:
            tokens.append(Token(_PUNCT[ch], ch, line, col))
            i += 1
            col += 1
            continue
        m = _IDENT_RE.match(source, i)
        if m:
            text = m.group(0)
            kind = text.lower() if text.lower() in KEYWORDS else "ident"
            tokens.append(Token(kind, text, line, col))
            i = m.end()
            col += len(text)
            continue
        m = _NUMBER_RE.match(source, i)
        if m:
            text = m.group(0)
            tokens.append(Token("number", text, line, col))
            i = m.end()
            col += len(text)
            continue
        diagnostics.append(
            Diagnostic("error", line, col, f"illegal character {ch!r}", "illegal-char")
        )
        i += 1
        col += 1
    tokens.append(Token("eof", "", line, col))
    return tokens, diagnostics


class _SyntaxError(Exception):
    """Internal parser signal; converted to a Diagnostic by the driver."""

    def __init__(self, diagnostic: Diagnostic):
        self.diagnostic = diagnostic
        super().__init__(str(diagnostic))


class TokenCursor:
    """Shared token stream walker for the rule and document parsers."""

    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str) -> bool:
        return self.tokens[self.pos].kind == kind

    def expect(self, kind: str, what: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text if tok.kind != "eof" else "end of input"
            raise _SyntaxError(
                Diagnostic("error", tok.line, tok.col, f"expected {what}, found {found!r}", "syntax")
            )
        return self.advance()


def _parse_clause(cur: TokenCursor) -> tuple[Clause, Token]:
    cur.expect("lparen", "'(' before antecedent clause")
    var = cur.expect("ident", "variable name")
    cur.expect("is", "'is'")
    term = cur.expect("ident", "term name")
    cur.expect("rparen", "')' after clause")
    return Clause(variable=var.value, term=term.value), var


def parse_rule_tokens(cur: TokenCursor) -> Rule:
    """Parse one rule starting at the cursor; raises _SyntaxError internally.

    Used by both `parse_rule` and the document parser.
    """
    start = cur.expect("if", "'IF'")
    antecedents = []
    seen: set[str] = set()
    while True:
        clause, var_tok = _parse_clause(cur)
        if clause.variable in seen:
            raise _SyntaxError(
                Diagnostic(
                    "error",
                    var_tok.line,
                    var_tok.col,
                    f"variable '{clause.variable}' appears twice in the antecedents of one rule",
                    "dup-antecedent",
                )
            )
        seen.add(clause.variable)
        antecedents.append(clause)
        if not cur.at("and"):
            break
        cur.advance()
    cur.expect("then", "'THEN' after antecedents")
    out_var = cur.expect("ident", "consequent variable name")
    cur.expect("is", "'is'")
    out_term = cur.expect("ident", "consequent term name")
    if cur.at("semicolon"):
        cur.advance()
    return Rule(
        antecedents=tuple(antecedents),
        consequent=Clause(variable=out_var.value, term=out_term.value),
        line=start.line,
        col=start.col,
    )


def parse_rule(source: str) -> Rule:
    """Parse a single rule; raises KbDocumentError carrying diagnostics on failure."""
    tokens, diagnostics = tokenize(source)
    if diagnostics:
        raise KbDocumentError(diagnostics)
    cur = TokenCursor(tokens)
    try:
        rule = parse_rule_tokens(cur)
    except _SyntaxError as exc:
        raise KbDocumentError([exc.diagnostic]) from None
    trailing = cur.peek()
    if trailing.kind != "eof":
        raise KbDocumentError(
            [
                Diagnostic(
                    "error",
                    trailing.line,
                    trailing.col,
                    f"unexpected {trailing.text!r} after rule",
                    "syntax",
                )
            ]
        )
    return rule


def render(rule: Rule) -> str:
    """Canonical single-line form; `parse_rule(render(r))` equals ``r``."""
    ants = " and ".join(f"({cl.variable} is {cl.term})" for cl in rule.antecedents)
    return f"IF {ants} THEN {rule.consequent.variable} is {rule.consequent.term};"
