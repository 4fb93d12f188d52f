"""Knowledge-base document format: parser, canonical renderer and validator.

Document layout (UTF-8 text, ``#`` comments, keywords case-insensitive)::

    variable <name> <input|output> range <lo> <hi> {
      term <name> tri <a> <b> <c>
      term <name> trap <a> <b> <c> <d>
      term <name> points (<x>,<mu>) (<x>,<mu>) ...
    }
    IF (<var> is <term>) and ... THEN <var> is <term>;
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import KbDocumentError
from .membership import (
    LinguisticTerm,
    LinguisticVariable,
    MembershipFunction,
    PiecewiseLinear,
    Trapezoidal,
    Triangular,
    Universe,
)
from .rules import (
    Diagnostic,
    Rule,
    Token,
    TokenCursor,
    _SyntaxError,
    parse_rule_tokens,
    render,
    tokenize,
)


@dataclass(frozen=True)
class KnowledgeBase:
    """Variables plus rules at a given revision. Immutable; edits build new values.

    Rule ids are (re)assigned as ``r1..rN`` in document order on construction.
    """

    variables: tuple[LinguisticVariable, ...]
    rules: tuple[Rule, ...]
    revision: int = 0
    # source position of each (variable, term) declaration, for diagnostics
    term_positions: Mapping[tuple[str, str], tuple[int, int]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self):
        if self.revision < 0:
            raise ValueError("revision must be non-negative")
        numbered = tuple(replace(r, id=f"r{i}") for i, r in enumerate(self.rules, start=1))
        object.__setattr__(self, "rules", numbered)

    def variable(self, name: str) -> LinguisticVariable | None:
        for v in self.variables:
            if v.name == name:
                return v
        return None

    def rule(self, rule_id: str) -> Rule | None:
        for r in self.rules:
            if r.id == rule_id:
                return r
        return None

    def input_variables(self) -> tuple[LinguisticVariable, ...]:
        return tuple(v for v in self.variables if v.role == "input")

    def output_variables(self) -> tuple[LinguisticVariable, ...]:
        return tuple(v for v in self.variables if v.role == "output")


def _number(cur: TokenCursor, what: str) -> float:
    tok = cur.expect("number", what)
    return float(tok.text)


def _contextual(cur: TokenCursor, word: str) -> Token:
    tok = cur.peek()
    if tok.kind != "ident" or tok.value != word:
        found = tok.text if tok.kind != "eof" else "end of input"
        raise _SyntaxError(
            Diagnostic("error", tok.line, tok.col, f"expected '{word}', found {found!r}", "syntax")
        )
    return cur.advance()


def _parse_mf(cur: TokenCursor, kind_tok: Token) -> MembershipFunction:
    kind = kind_tok.value
    try:
        if kind == "tri":
            return Triangular(
                _number(cur, "triangle left foot"),
                _number(cur, "triangle peak"),
                _number(cur, "triangle right foot"),
            )
        if kind == "trap":
            return Trapezoidal(
                _number(cur, "trapezoid left foot"),
                _number(cur, "trapezoid left shoulder"),
                _number(cur, "trapezoid right shoulder"),
                _number(cur, "trapezoid right foot"),
            )
        if kind == "points":
            pts = []
            while cur.at("lparen"):
                cur.advance()
                x = _number(cur, "vertex x")
                cur.expect("comma", "',' between vertex coordinates")
                mu = _number(cur, "vertex degree")
                cur.expect("rparen", "')' closing vertex")
                pts.append((x, mu))
            return PiecewiseLinear(tuple(pts))
    except ValueError as exc:
        raise _SyntaxError(
            Diagnostic("error", kind_tok.line, kind_tok.col, str(exc), "invalid-term")
        ) from None
    raise _SyntaxError(
        Diagnostic(
            "error",
            kind_tok.line,
            kind_tok.col,
            f"expected 'tri', 'trap' or 'points', found {kind_tok.text!r}",
            "syntax",
        )
    )


def _parse_variable_block(
    cur: TokenCursor, term_positions: dict[tuple[str, str], tuple[int, int]]
) -> LinguisticVariable:
    head = _contextual(cur, "variable")
    name_tok = cur.expect("ident", "variable name")
    role_tok = cur.expect("ident", "'input' or 'output'")
    if role_tok.value not in ("input", "output"):
        raise _SyntaxError(
            Diagnostic(
                "error",
                role_tok.line,
                role_tok.col,
                f"expected 'input' or 'output', found {role_tok.text!r}",
                "syntax",
            )
        )
    _contextual(cur, "range")
    lo = _number(cur, "universe lower bound")
    hi = _number(cur, "universe upper bound")
    cur.expect("lbrace", "'{' opening the term list")
    terms: list[LinguisticTerm] = []
    while cur.at("ident") and cur.peek().value == "term":
        term_kw = cur.advance()
        term_name = cur.expect("ident", "term name")
        kind_tok = cur.expect("ident", "'tri', 'trap' or 'points'")
        mf = _parse_mf(cur, kind_tok)
        terms.append(LinguisticTerm(name=term_name.value, mf=mf))
        term_positions[(name_tok.value, term_name.value)] = (term_kw.line, term_kw.col)
    cur.expect("rbrace", "'}' closing the variable block")
    try:
        universe = Universe(lo, hi)
        return LinguisticVariable(
            name=name_tok.value, role=role_tok.value, universe=universe, terms=tuple(terms)
        )
    except ValueError as exc:
        raise _SyntaxError(
            Diagnostic("error", head.line, head.col, str(exc), "invalid-variable")
        ) from None


def _sync(cur: TokenCursor) -> None:
    # panic-mode recovery: skip to the next plausible construct start
    while True:
        tok = cur.peek()
        if tok.kind == "eof" or tok.kind == "if" or (tok.kind == "ident" and tok.value == "variable"):
            return
        cur.advance()
        if tok.kind in ("semicolon", "rbrace"):
            return


def parse_kb(source: str) -> KnowledgeBase:
    """Parse a whole document into a KnowledgeBase at revision 0.

    Parsing continues past recoverable errors; if any error was recorded the
    aggregated diagnostics are raised as KbDocumentError and no partial
    knowledge base escapes.
    """
    tokens, diagnostics = tokenize(source)
    cur = TokenCursor(tokens)
    variables: list[LinguisticVariable] = []
    var_names: set[str] = set()
    rules: list[Rule] = []
    term_positions: dict[tuple[str, str], tuple[int, int]] = {}
    while not cur.at("eof"):
        tok = cur.peek()
        try:
            if tok.kind == "ident" and tok.value == "variable":
                var = _parse_variable_block(cur, term_positions)
                if var.name in var_names:
                    diagnostics.append(
                        Diagnostic(
                            "error",
                            tok.line,
                            tok.col,
                            f"variable '{var.name}' is declared twice",
                            "dup-variable",
                        )
                    )
                else:
                    var_names.add(var.name)
                    variables.append(var)
            elif tok.kind == "if":
                rules.append(parse_rule_tokens(cur))
            else:
                found = tok.text if tok.kind != "eof" else "end of input"
                diagnostics.append(
                    Diagnostic(
                        "error",
                        tok.line,
                        tok.col,
                        f"expected a variable block or a rule, found {found!r}",
                        "syntax",
                    )
                )
                cur.advance()
                _sync(cur)
        except _SyntaxError as exc:
            diagnostics.append(exc.diagnostic)
            _sync(cur)
    if not variables and not any(d.severity == "error" for d in diagnostics):
        diagnostics.append(Diagnostic("error", 1, 1, "no variables declared", "no-variables"))
    if any(d.severity == "error" for d in diagnostics):
        raise KbDocumentError(diagnostics)
    return KnowledgeBase(
        variables=tuple(variables),
        rules=tuple(rules),
        revision=0,
        term_positions=term_positions,
    )


def _fmt_num(v: float) -> str:
    return str(int(v)) if float(v).is_integer() else repr(float(v))


def _render_mf(mf: MembershipFunction) -> str:
    if isinstance(mf, Triangular):
        return f"tri {_fmt_num(mf.a)} {_fmt_num(mf.b)} {_fmt_num(mf.c)}"
    if isinstance(mf, Trapezoidal):
        return f"trap {_fmt_num(mf.a)} {_fmt_num(mf.b)} {_fmt_num(mf.c)} {_fmt_num(mf.d)}"
    pts = " ".join(f"({_fmt_num(x)},{_fmt_num(mu)})" for x, mu in mf.points)
    return f"points {pts}"


def render_kb(kb: KnowledgeBase) -> str:
    """Canonical document text; a render fixpoint under parse_kb."""
    blocks = []
    for v in kb.variables:
        lines = [
            f"variable {v.name} {v.role} range {_fmt_num(v.universe.lo)} {_fmt_num(v.universe.hi)} {{"
        ]
        lines.extend(f"  term {t.name} {_render_mf(t.mf)}" for t in v.terms)
        lines.append("}")
        blocks.append("\n".join(lines))
    if kb.rules:
        blocks.append("\n".join(render(r) for r in kb.rules))
    return "\n\n".join(blocks) + "\n"


def validate(kb: KnowledgeBase) -> list[Diagnostic]:
    """Reference and consistency checks; returns diagnostics, never raises."""
    diags: list[Diagnostic] = []
    vars_by_name: dict[str, LinguisticVariable] = {}
    for v in kb.variables:
        if v.name in vars_by_name:
            diags.append(
                Diagnostic("error", 1, 1, f"variable '{v.name}' is declared twice", "dup-variable")
            )
        vars_by_name[v.name] = v

    def check_clause(clause, rule, expected_role, role_code):
        var = vars_by_name.get(clause.variable)
        if var is None:
            diags.append(
                Diagnostic(
                    "error",
                    rule.line,
                    rule.col,
                    f"rule {rule.id} references undeclared variable '{clause.variable}'",
                    "unknown-variable",
                )
            )
            return
        if clause.term not in var.term_names():
            diags.append(
                Diagnostic(
                    "error",
                    rule.line,
                    rule.col,
                    f"rule {rule.id}: variable '{clause.variable}' has no term '{clause.term}'",
                    "unknown-term",
                )
            )
        if var.role != expected_role:
            diags.append(
                Diagnostic(
                    "error",
                    rule.line,
                    rule.col,
                    f"rule {rule.id}: variable '{clause.variable}' is an {var.role} variable",
                    role_code,
                )
            )

    for rule in kb.rules:
        for clause in rule.antecedents:
            check_clause(clause, rule, "input", "not-an-input")
        check_clause(rule.consequent, rule, "output", "not-an-output")

    seen: dict[tuple[frozenset, str], Rule] = {}
    for rule in kb.rules:
        key = (frozenset((c.variable, c.term) for c in rule.antecedents), rule.consequent.variable)
        prior = seen.get(key)
        if prior is None:
            seen[key] = rule
        elif prior.consequent.term == rule.consequent.term:
            diags.append(
                Diagnostic(
                    "warning",
                    rule.line,
                    rule.col,
                    f"rule {rule.id} duplicates rule {prior.id}",
                    "duplicate-rule",
                )
            )
        else:
            diags.append(
                Diagnostic(
                    "error",
                    rule.line,
                    rule.col,
                    f"rule {rule.id} contradicts rule {prior.id}: identical antecedents "
                    f"but '{rule.consequent.term}' vs '{prior.consequent.term}'",
                    "contradiction",
                )
            )

    used = {(r.consequent.variable, r.consequent.term) for r in kb.rules}
    for v in kb.variables:
        if v.role != "output":
            continue
        for t in v.terms:
            if (v.name, t.name) not in used:
                line, col = kb.term_positions.get((v.name, t.name), (1, 1))
                diags.append(
                    Diagnostic(
                        "warning",
                        line,
                        col,
                        f"output term '{t.name}' of '{v.name}' is never produced by any rule",
                        "uncovered-term",
                    )
                )
    return diags


def load_document(source: str, revision: int = 0) -> KnowledgeBase:
    """parse_kb + validate; raises KbDocumentError when validation finds errors.

    Warnings do not abort the load; fetch them with `validate` when needed.
    """
    kb = parse_kb(source)
    diags = validate(kb)
    if any(d.severity == "error" for d in diags):
        raise KbDocumentError(diags)
    if revision:
        kb = replace(kb, revision=revision)
    return kb
