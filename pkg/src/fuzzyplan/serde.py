"""Dict conversions for wire and file payloads.

All functions preserve ordering (term declaration order, rule order), so a
serialized consultation is byte-deterministic for fixed inputs and revision.
"""

from __future__ import annotations

from typing import Any

from .engine import ConsultationResult, RuleFiring, SessionRecommendation
from .membership import (
    AggregatedOutputSet,
    FuzzifiedValue,
    LinguisticTerm,
    LinguisticVariable,
    MembershipFunction,
    PiecewiseLinear,
    Trapezoidal,
    Triangular,
    Universe,
)
from .rules import Clause


def mf_to_dict(mf: MembershipFunction) -> dict[str, Any]:
    if isinstance(mf, Triangular):
        params: list = [mf.a, mf.b, mf.c]
        kind = "tri"
    elif isinstance(mf, Trapezoidal):
        params = [mf.a, mf.b, mf.c, mf.d]
        kind = "trap"
    else:
        params = [[x, mu] for x, mu in mf.points]
        kind = "points"
    return {"kind": kind, "params": params, "vertices": [[x, mu] for x, mu in mf.vertices()]}


def mf_from_dict(d: dict[str, Any]) -> MembershipFunction:
    kind = d["kind"]
    if kind == "tri":
        return Triangular(*d["params"])
    if kind == "trap":
        return Trapezoidal(*d["params"])
    if kind == "points":
        return PiecewiseLinear(tuple((x, mu) for x, mu in d["params"]))
    raise ValueError(f"unknown membership function kind {kind!r}")


def variable_to_dict(v: LinguisticVariable) -> dict[str, Any]:
    return {
        "name": v.name,
        "role": v.role,
        "universe": {"lo": v.universe.lo, "hi": v.universe.hi},
        "terms": [{"name": t.name, **mf_to_dict(t.mf)} for t in v.terms],
    }


def variable_from_dict(d: dict[str, Any]) -> LinguisticVariable:
    return LinguisticVariable(
        name=d["name"],
        role=d["role"],
        universe=Universe(d["universe"]["lo"], d["universe"]["hi"]),
        terms=tuple(LinguisticTerm(name=t["name"], mf=mf_from_dict(t)) for t in d["terms"]),
    )


def result_to_dict(result: ConsultationResult) -> dict[str, Any]:
    return {
        "inputs": dict(result.inputs),
        "fuzzified": [
            {"variable": fv.variable, "crisp": fv.crisp, "degrees": dict(fv.degrees)}
            for fv in result.fuzzified
        ],
        "firings": [
            {
                "rule_id": f.rule_id,
                "clause_degrees": [[v, t, d] for v, t, d in f.clause_degrees],
                "alpha": f.alpha,
                "consequent": {"variable": f.consequent.variable, "term": f.consequent.term},
            }
            for f in result.firings
        ],
        "aggregate": {
            "variable": variable_to_dict(result.aggregate.variable),
            "term_alphas": dict(result.aggregate.term_alphas),
        },
        "crisp_output": result.crisp_output,
        "recommendation": {
            "low_count": result.recommendation.low_count,
            "high_count": result.recommendation.high_count,
            "preferred": result.recommendation.preferred,
            "note": result.recommendation.note,
        },
        "kb_revision": result.kb_revision,
    }


def result_from_dict(d: dict[str, Any]) -> ConsultationResult:
    rec = d["recommendation"]
    return ConsultationResult(
        inputs=dict(d["inputs"]),
        fuzzified=tuple(
            FuzzifiedValue(variable=fv["variable"], crisp=fv["crisp"], degrees=dict(fv["degrees"]))
            for fv in d["fuzzified"]
        ),
        firings=tuple(
            RuleFiring(
                rule_id=f["rule_id"],
                clause_degrees=tuple((v, t, deg) for v, t, deg in f["clause_degrees"]),
                alpha=f["alpha"],
                consequent=Clause(f["consequent"]["variable"], f["consequent"]["term"]),
            )
            for f in d["firings"]
        ),
        aggregate=AggregatedOutputSet(
            variable=variable_from_dict(d["aggregate"]["variable"]),
            term_alphas=dict(d["aggregate"]["term_alphas"]),
        ),
        crisp_output=d["crisp_output"],
        recommendation=SessionRecommendation(
            low_count=rec["low_count"],
            high_count=rec["high_count"],
            preferred=rec["preferred"],
            note=rec["note"],
        ),
        kb_revision=d["kb_revision"],
    )
