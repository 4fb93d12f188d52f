"""End-to-end inference: fuzzify inputs, fire rules with min, aggregate with
max, defuzzify by centroid and interpret the result as a weekly session plan.

`infer` is a pure function over an immutable knowledge-base snapshot; any
number of consultations may run concurrently against the same snapshot.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

from .document import KnowledgeBase
from .errors import ConsultationError
from .membership import (
    AggregatedOutputSet,
    FuzzifiedValue,
    aggregate,
    defuzzify_centroid,
    format_fuzzified,
    fuzzify,
)
from .rules import Clause, Rule

DEFAULT_RESOLUTION = 1001


@dataclass(frozen=True)
class RuleFiring:
    rule_id: str | None
    clause_degrees: tuple[tuple[str, str, float], ...]  # (variable, term, degree) in rule order
    alpha: float
    consequent: Clause


@dataclass(frozen=True)
class SessionRecommendation:
    low_count: int
    high_count: int
    preferred: int
    note: str


@dataclass(frozen=True)
class ConsultationResult:
    inputs: Mapping[str, float]
    fuzzified: tuple[FuzzifiedValue, ...]
    firings: tuple[RuleFiring, ...]
    aggregate: AggregatedOutputSet
    crisp_output: float
    recommendation: SessionRecommendation
    kb_revision: int


def firing_strength(rule: Rule, fuzzified: Mapping[str, FuzzifiedValue]) -> RuleFiring:
    """Min over the rule's antecedent clause degrees; degrees kept in rule order."""
    degrees = []
    for clause in rule.antecedents:
        fv = fuzzified.get(clause.variable)
        if fv is None:
            raise ConsultationError(
                f"rule {rule.id}: no fuzzified value for clause ({clause.variable} is {clause.term})"
            )
        if clause.term not in fv.degrees:
            raise ConsultationError(
                f"rule {rule.id}: fuzzified value for '{clause.variable}' has no term "
                f"'{clause.term}'"
            )
        degrees.append((clause.variable, clause.term, fv.degrees[clause.term]))
    alpha = min(d for _, _, d in degrees)
    return RuleFiring(
        rule_id=rule.id,
        clause_degrees=tuple(degrees),
        alpha=alpha,
        consequent=rule.consequent,
    )


def referenced_input_variables(kb: KnowledgeBase):
    """Input variables mentioned by at least one rule, in declaration order."""
    mentioned = {c.variable for r in kb.rules for c in r.antecedents}
    return tuple(v for v in kb.variables if v.name in mentioned)


def _single_output_variable(kb: KnowledgeBase):
    names: list[str] = []
    for r in kb.rules:
        if r.consequent.variable not in names:
            names.append(r.consequent.variable)
    if len(names) != 1:
        raise ConsultationError(
            f"rules reference {len(names)} output variables ({', '.join(names) or 'none'}); "
            "exactly one is supported"
        )
    var = kb.variable(names[0])
    if var is None:
        raise ConsultationError(f"output variable '{names[0]}' is not declared")
    return var


def _run(
    kb: KnowledgeBase,
    fuzzified: Iterable[FuzzifiedValue],
    resolution: int,
) -> ConsultationResult:
    fuzzified = tuple(fuzzified)
    fuzz_map = {fv.variable: fv for fv in fuzzified}
    firings = tuple(firing_strength(rule, fuzz_map) for rule in kb.rules)
    out_var = _single_output_variable(kb)
    agg = aggregate(((f.consequent.term, f.alpha) for f in firings), out_var)
    crisp = defuzzify_centroid(agg, resolution)
    return ConsultationResult(
        inputs={fv.variable: fv.crisp for fv in fuzzified},
        fuzzified=fuzzified,
        firings=firings,
        aggregate=agg,
        crisp_output=crisp,
        recommendation=interpret_sessions(crisp),
        kb_revision=kb.revision,
    )


def infer(
    kb: KnowledgeBase, inputs: Mapping[str, float], resolution: int = DEFAULT_RESOLUTION
) -> ConsultationResult:
    """Run one consultation. Inputs must cover every input variable referenced
    by a rule and lie inside their universes; extra inputs are ignored."""
    referenced = referenced_input_variables(kb)
    missing = [v.name for v in referenced if v.name not in inputs]
    if missing:
        raise ConsultationError(f"missing input value(s): {', '.join(missing)}")
    fuzzified = tuple(fuzzify(v, inputs[v.name]) for v in referenced)
    return _run(kb, fuzzified, resolution)


def infer_fuzzified(
    kb: KnowledgeBase,
    fuzzified: Iterable[FuzzifiedValue],
    resolution: int = DEFAULT_RESOLUTION,
) -> ConsultationResult:
    """Run the rule and aggregation stages on already-fuzzified values.

    Bypasses fuzzification so exact degree tables can drive the min/max
    stages directly.
    """
    return _run(kb, fuzzified, resolution)


def interpret_sessions(crisp_output: float) -> SessionRecommendation:
    """Bracket the crisp session count between floor and ceil; the preferred
    count is the nearest integer with halves rounding up."""
    if not math.isfinite(crisp_output) or crisp_output < 0:
        raise ValueError(f"session count must be finite and non-negative, got {crisp_output!r}")
    low = math.floor(crisp_output)
    high = math.ceil(crisp_output)
    preferred = math.floor(crisp_output + 0.5)
    note = f"{low} to {high} sessions per week ({preferred} preferred)"
    return SessionRecommendation(low_count=low, high_count=high, preferred=preferred, note=note)


def render_report(result: ConsultationResult, trace: bool = True) -> str:
    """Plain-text consultation report.

    With ``trace``: fuzzified lines, one ``rN: min(...) = a -> term`` line per
    rule, one ``term = max(...) = A`` line per output term, then the output
    value and the recommendation. Without it: just the last two lines.
    """
    lines = []
    if trace:
        lines.extend(format_fuzzified(fv) for fv in result.fuzzified)
        for f in result.firings:
            args = ", ".join(f"{d:.2f}" for _, _, d in f.clause_degrees)
            lines.append(f"{f.rule_id}: min({args}) = {f.alpha:.2f} -> {f.consequent.term}")
        out_name = result.aggregate.variable.name
        for term in result.aggregate.variable.terms:
            contribs = ", ".join(
                f"{f.alpha:.2f}"
                for f in result.firings
                if f.consequent.variable == out_name and f.consequent.term == term.name
            )
            level = result.aggregate.term_alphas.get(term.name, 0.0)
            lines.append(f"{term.name} = max({contribs}) = {level:.2f}")
    lines.append(f"output = {result.crisp_output:.2f}")
    lines.append(result.recommendation.note)
    return "\n".join(lines)
