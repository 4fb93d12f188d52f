import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fuzzyplan.errors import KbDocumentError
from fuzzyplan.rules import Clause, Rule, parse_rule, render, tokenize

WORKED_RULES = [
    "IF (speech_problems_level is high) and (child_age is medium) and (family_implication is reduce) THEN weekly_session_number is high;",
    "IF (speech_problems_level is low) and (child_age is small) and (family_implication is moderate) THEN weekly_session_number is low;",
    "IF (speech_problems_level is low) and (child_age is medium) and (family_implication is moderate) THEN weekly_session_number is low;",
    "IF (speech_problems_level is normal) and (child_age is small) and (family_implication is moderate) THEN weekly_session_number is normal",
    "IF (speech_problems_level is normal) and (child_age is medium) and (family_implication is moderate) THEN weekly_session_number is normal",
]


class TestTokenize:
    def test_minimal_rule_token_kinds(self):
        tokens, diags = tokenize("IF (a is b) THEN c is d")
        assert not diags
        kinds = [t.kind for t in tokens]
        assert kinds == [
            "if", "lparen", "ident", "is", "ident", "rparen",
            "then", "ident", "is", "ident", "eof",
        ]

    def test_keywords_fold_case(self):
        lower, _ = tokenize("and")
        upper, _ = tokenize("AND")
        assert lower[0].kind == upper[0].kind == "and"

    def test_identifiers_keep_raw_text(self):
        tokens, _ = tokenize("Speech_Problems")
        assert tokens[0].text == "Speech_Problems"
        assert tokens[0].value == "speech_problems"

    def test_illegal_character_positioned(self):
        _, diags = tokenize("a@b")
        assert len(diags) == 1
        assert diags[0].severity == "error"
        assert diags[0].code == "illegal-char"
        assert (diags[0].line, diags[0].col) == (1, 2)

    def test_comments_skipped(self):
        tokens, diags = tokenize("# a comment with @ and ( inside\nIF")
        assert not diags
        assert tokens[0].kind == "if"
        assert tokens[0].line == 2

    def test_numbers(self):
        tokens, _ = tokenize("3 4.5 -0.25")
        assert [t.kind for t in tokens[:3]] == ["number"] * 3
        assert [t.text for t in tokens[:3]] == ["3", "4.5", "-0.25"]

    def test_position_soundness(self):
        source = "IF (Var_1 is Big)\n  and (v2 is small) THEN out is high;"
        tokens, diags = tokenize(source)
        assert not diags
        lines = source.split("\n")
        for tok in tokens:
            if tok.kind == "eof":
                continue
            slice_ = lines[tok.line - 1][tok.col - 1 : tok.col - 1 + len(tok.text)]
            assert slice_ == tok.text


class TestParseRule:
    @pytest.mark.parametrize("text", WORKED_RULES)
    def test_worked_rules_parse(self, text):
        rule = parse_rule(text)
        assert len(rule.antecedents) == 3
        assert rule.consequent.variable == "weekly_session_number"

    def test_single_antecedent(self):
        rule = parse_rule("IF (x is a) THEN y is b")
        assert rule.antecedents == (Clause("x", "a"),)
        assert rule.consequent == Clause("y", "b")

    def test_case_insensitive_keywords_fold_identifiers(self):
        rule = parse_rule("if (X IS A) AND (Y is B) then OUT Is HIGH;")
        assert rule.antecedents == (Clause("x", "a"), Clause("y", "b"))
        assert rule.consequent == Clause("out", "high")

    def test_duplicate_antecedent_variable_rejected(self):
        with pytest.raises(KbDocumentError) as exc:
            parse_rule("IF (x is a) and (x is c) THEN y is b")
        codes = [d.code for d in exc.value.diagnostics]
        assert "dup-antecedent" in codes

    def test_missing_parenthesis_hint(self):
        with pytest.raises(KbDocumentError) as exc:
            parse_rule("IF x is a THEN y is b")
        d = exc.value.diagnostics[0]
        assert "(" in d.message
        assert (d.line, d.col) == (1, 4)

    def test_missing_then(self):
        with pytest.raises(KbDocumentError) as exc:
            parse_rule("IF (x is a) y is b")
        assert "THEN" in exc.value.diagnostics[0].message

    def test_trailing_garbage_rejected(self):
        with pytest.raises(KbDocumentError):
            parse_rule("IF (x is a) THEN y is b; extra")

    def test_consequent_must_not_be_parenthesized(self):
        with pytest.raises(KbDocumentError):
            parse_rule("IF (x is a) THEN (y is b)")


class TestRender:
    def test_worked_rule_canonical_form(self):
        rule = parse_rule(WORKED_RULES[0])
        assert render(rule) == (
            "IF (speech_problems_level is high) and (child_age is medium) "
            "and (family_implication is reduce) THEN weekly_session_number is high;"
        )

    def test_render_parse_fixpoint(self):
        for text in WORKED_RULES:
            once = render(parse_rule(text))
            assert render(parse_rule(once)) == once

    def test_single_antecedent_roundtrip(self):
        rule = parse_rule("if (a is b) then c is d")
        assert parse_rule(render(rule)) == rule


_ident = st.from_regex(r"[a-z][a-z0-9_]{0,11}", fullmatch=True).filter(
    lambda s: s not in {"if", "and", "then", "is"}
)


@st.composite
def rule_values(draw):
    n = draw(st.integers(1, 5))
    variables = draw(
        st.lists(_ident, min_size=n + 1, max_size=n + 1, unique=True)
    )
    terms = draw(st.lists(_ident, min_size=n + 1, max_size=n + 1))
    antecedents = tuple(Clause(v, t) for v, t in zip(variables[:n], terms[:n]))
    return Rule(antecedents=antecedents, consequent=Clause(variables[n], terms[n]))


@given(rule_values())
def test_roundtrip_random_rules(rule):
    assert parse_rule(render(rule)) == rule


@given(rule_values(), st.randoms(use_true_random=False))
def test_roundtrip_survives_messy_spacing(rule, rnd):
    text = render(rule)
    # re-space and randomize keyword case without touching structure
    out = []
    for ch in text:
        if ch == " " and rnd.random() < 0.3:
            out.append("  \t"[: rnd.randint(1, 3)])
        else:
            out.append(ch)
    messy = "".join(out)
    assert parse_rule(messy) == rule


BREAKING_MUTATIONS = [
    lambda t: t.replace("(", "", 1),
    lambda t: t.replace("THEN ", "", 1),
    lambda t: t.replace(" is ", " @ ", 1),
    lambda t: t[: t.rindex(" ")],  # drop the consequent term
    lambda t: t.replace("(", "((", 1),
]


def test_mutated_rules_produce_positioned_diagnostics():
    rng = random.Random(5)
    for i in range(25):
        base = render(parse_rule(rng.choice(WORKED_RULES)))
        mutated = BREAKING_MUTATIONS[i % len(BREAKING_MUTATIONS)](base)
        with pytest.raises(KbDocumentError) as exc:
            parse_rule(mutated)
        lines = mutated.split("\n")
        for d in exc.value.diagnostics:
            assert 1 <= d.line <= len(lines)
            assert 1 <= d.col <= len(lines[d.line - 1]) + 1
