import random

import pytest

from fuzzyplan.document import KnowledgeBase, parse_kb
from fuzzyplan.engine import (
    ConsultationResult,
    firing_strength,
    infer,
    infer_fuzzified,
    interpret_sessions,
    render_report,
)
from fuzzyplan.errors import ConsultationError, NoRuleFiredError
from fuzzyplan.fixture import SPEECH_THERAPY_KB
from fuzzyplan.membership import FuzzifiedValue
from fuzzyplan.rules import parse_rule

from conftest import EXACT_AGGREGATE, EXACT_ALPHAS, EXACT_DEGREES, oracle_centroid


def exact_fuzzified(degrees=EXACT_DEGREES, crisps=None):
    crisps = crisps or {"speech_problems_level": 1.62, "family_implication": 2.0, "child_age": 4.5}
    return [
        FuzzifiedValue(variable=name, crisp=crisps[name], degrees=dict(table))
        for name, table in degrees.items()
    ]


class TestFiringStrength:
    def test_zero_blocks_rule(self, fixture_kb):
        fuzz = {fv.variable: fv for fv in exact_fuzzified()}
        firing = firing_strength(fixture_kb.rules[0], fuzz)
        assert firing.alpha == 0.0
        assert [d for _, _, d in firing.clause_degrees] == [0.0, 0.5, 0.0]

    def test_min_of_three(self, fixture_kb):
        fuzz = {fv.variable: fv for fv in exact_fuzzified()}
        firing = firing_strength(fixture_kb.rules[2], fuzz)
        assert firing.alpha == 0.37

    def test_single_clause_passes_through(self):
        rule = parse_rule("IF (a is t) THEN out is x")
        fuzz = {"a": FuzzifiedValue("a", 1.0, {"t": 0.73})}
        assert firing_strength(rule, fuzz).alpha == 0.73

    def test_missing_variable_names_rule_and_clause(self, fixture_kb):
        with pytest.raises(ConsultationError) as exc:
            firing_strength(fixture_kb.rules[0], {})
        assert "r1" in str(exc.value)
        assert "speech_problems_level" in str(exc.value)

    def test_missing_term_names_rule(self, fixture_kb):
        fuzz = {fv.variable: fv for fv in exact_fuzzified()}
        fuzz["child_age"] = FuzzifiedValue("child_age", 4.5, {"small": 0.2})
        with pytest.raises(ConsultationError) as exc:
            firing_strength(fixture_kb.rules[0], fuzz)
        assert "medium" in str(exc.value)


class TestExactDegreeReplay:
    def test_alphas_and_aggregate_exact(self, fixture_kb):
        result = infer_fuzzified(fixture_kb, exact_fuzzified())
        assert [f.alpha for f in result.firings] == EXACT_ALPHAS
        assert dict(result.aggregate.term_alphas) == EXACT_AGGREGATE

    def test_no_tolerance_in_min_max_stage(self, fixture_kb):
        rng = random.Random(99)
        for _ in range(100):
            degrees = {
                var: {t: rng.random() for t in table} for var, table in EXACT_DEGREES.items()
            }
            try:
                result = infer_fuzzified(fixture_kb, exact_fuzzified(degrees))
            except NoRuleFiredError:
                continue
            for rule, firing in zip(fixture_kb.rules, result.firings):
                expected = min(degrees[c.variable][c.term] for c in rule.antecedents)
                assert firing.alpha == expected  # identical float, no drift
            for term, level in result.aggregate.term_alphas.items():
                contributing = [
                    f.alpha for f in result.firings if f.consequent.term == term
                ]
                assert level == (max(contributing) if contributing else 0.0)


class TestInfer:
    def test_fixture_end_to_end(self, fixture_kb, fixture_inputs):
        result = infer(fixture_kb, fixture_inputs)
        for alpha, expected in zip((f.alpha for f in result.firings), EXACT_ALPHAS):
            assert alpha == pytest.approx(expected, abs=0.015)
        for term, expected in EXACT_AGGREGATE.items():
            assert result.aggregate.term_alphas[term] == pytest.approx(expected, abs=0.015)
        oracle = oracle_centroid(result.aggregate.variable, result.aggregate.term_alphas, 1001)
        assert result.crisp_output == pytest.approx(oracle, rel=1e-3)

    def test_missing_input_fails_before_rules(self, fixture_kb):
        with pytest.raises(ConsultationError) as exc:
            infer(fixture_kb, {"child_age": 4.5})
        assert "speech_problems_level" in str(exc.value)
        assert "family_implication" in str(exc.value)

    def test_out_of_universe_input_rejected(self, fixture_kb, fixture_inputs):
        bad = dict(fixture_inputs, child_age=9.0)
        with pytest.raises(Exception) as exc:
            infer(fixture_kb, bad)
        assert "child_age" in str(exc.value)

    def test_no_rule_fired(self, fixture_kb, fixture_inputs):
        quiet = dict(fixture_inputs, family_implication=4.0)
        with pytest.raises(NoRuleFiredError):
            infer(fixture_kb, quiet)

    def test_rule_order_invariance(self, fixture_kb, fixture_inputs):
        base = infer(fixture_kb, fixture_inputs)
        rng = random.Random(3)
        for _ in range(20):
            shuffled = list(fixture_kb.rules)
            rng.shuffle(shuffled)
            kb = KnowledgeBase(
                variables=fixture_kb.variables, rules=tuple(shuffled), revision=0
            )
            result = infer(kb, fixture_inputs)
            assert dict(result.aggregate.term_alphas) == dict(base.aggregate.term_alphas)
            assert result.crisp_output == base.crisp_output
            assert result.recommendation == base.recommendation
            # firings follow the knowledge base's own rule order
            assert [f.rule_id for f in result.firings] == [r.id for r in kb.rules]

    def test_unreferenced_input_invariance(self, fixture_kb, fixture_inputs):
        extra_var = (
            "variable moon_phase input range 0 1 {\n"
            "  term dim tri 0 0 1\n"
            "  term bright tri 0 1 1\n"
            "}\n"
        )
        head, rules_text = SPEECH_THERAPY_KB.split("IF ", 1)
        widened = parse_kb(head + extra_var + "IF " + rules_text)
        base = infer(fixture_kb, fixture_inputs)
        result = infer(widened, dict(fixture_inputs, moon_phase=0.7))
        assert result == base

    def test_extra_unknown_inputs_ignored(self, fixture_kb, fixture_inputs):
        base = infer(fixture_kb, fixture_inputs)
        assert infer(fixture_kb, dict(fixture_inputs, unused=123.0)) == base

    def test_deterministic(self, fixture_kb, fixture_inputs):
        assert infer(fixture_kb, fixture_inputs) == infer(fixture_kb, fixture_inputs)
        assert isinstance(infer(fixture_kb, fixture_inputs), ConsultationResult)

    def test_monotone_in_clause_degrees(self, fixture_kb):
        rng = random.Random(17)
        for _ in range(100):
            degrees = {
                var: {t: rng.random() for t in table} for var, table in EXACT_DEGREES.items()
            }
            var = rng.choice(list(degrees))
            term = rng.choice(list(degrees[var]))
            bumped = {v: dict(t) for v, t in degrees.items()}
            bumped[var][term] = min(1.0, degrees[var][term] + rng.random())
            try:
                before = infer_fuzzified(fixture_kb, exact_fuzzified(degrees))
                after = infer_fuzzified(fixture_kb, exact_fuzzified(bumped))
            except NoRuleFiredError:
                continue
            for f_before, f_after in zip(before.firings, after.firings):
                assert f_after.alpha >= f_before.alpha
            for t, level in before.aggregate.term_alphas.items():
                assert after.aggregate.term_alphas[t] >= level


class TestInterpretSessions:
    def test_worked_value(self):
        rec = interpret_sessions(1.62)
        assert (rec.low_count, rec.high_count, rec.preferred) == (1, 2, 2)
        assert rec.note == "1 to 2 sessions per week (2 preferred)"

    def test_integer_collapses(self):
        rec = interpret_sessions(2.0)
        assert (rec.low_count, rec.high_count, rec.preferred) == (2, 2, 2)

    def test_half_rounds_up(self):
        assert interpret_sessions(1.5).preferred == 2

    def test_below_half_rounds_down(self):
        assert interpret_sessions(1.49).preferred == 1

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            interpret_sessions(-0.5)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            interpret_sessions(float("nan"))


class TestRenderReport:
    def test_trace_blocks_present(self, fixture_kb):
        result = infer_fuzzified(fixture_kb, exact_fuzzified())
        report = render_report(result, trace=True)
        assert 'family_implication (2.00) = {"reduce"/0.00, "moderate"/1.00, "high"/0.00}' in report
        assert "r3: min(0.37, 0.50, 1.00) = 0.37 -> low" in report
        assert "normal = max(0.25, 0.50) = 0.50" in report
        assert "low = max(0.25, 0.37) = 0.37" in report
        assert "high = max(0.00) = 0.00" in report

    def test_no_trace_is_two_lines(self, fixture_kb, fixture_inputs):
        result = infer(fixture_kb, fixture_inputs)
        lines = render_report(result, trace=False).splitlines()
        assert len(lines) == 2
        assert lines[0].startswith("output = ")
        assert "sessions per week" in lines[1]

    def test_byte_deterministic(self, fixture_kb, fixture_inputs):
        a = render_report(infer(fixture_kb, fixture_inputs))
        b = render_report(infer(fixture_kb, fixture_inputs))
        assert a == b
