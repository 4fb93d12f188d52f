"""Fuzzy rule-based therapy session planner.

Crisp assessment inputs are fuzzified over linguistic variables, evaluated
against a rule base with min/max inference, defuzzified by center of gravity
and returned as a session-plan recommendation with a full trace. The rule
base is a versioned text document editable over the HTTP service.
"""

from .document import KnowledgeBase, load_document, parse_kb, render_kb, validate
from .engine import (
    ConsultationResult,
    RuleFiring,
    SessionRecommendation,
    firing_strength,
    infer,
    infer_fuzzified,
    interpret_sessions,
    render_report,
)
from .errors import (
    ConsultationError,
    FuzzyPlanError,
    KbDocumentError,
    NoRuleFiredError,
    OutOfUniverseError,
    RevisionConflictError,
)
from .membership import (
    AggregatedOutputSet,
    FuzzifiedValue,
    LinguisticTerm,
    LinguisticVariable,
    PiecewiseLinear,
    Trapezoidal,
    Triangular,
    Universe,
    aggregate,
    defuzzify_centroid,
    format_fuzzified,
    fuzzify,
    membership_degree,
)
from .rules import Clause, Diagnostic, Rule, parse_rule, render, tokenize
from .store import Edit, KnowledgeBaseStore, OverrideRecord, apply_edit

__version__ = "0.1.0"

__all__ = [
    "AggregatedOutputSet",
    "Clause",
    "ConsultationError",
    "ConsultationResult",
    "Diagnostic",
    "Edit",
    "FuzzifiedValue",
    "FuzzyPlanError",
    "KbDocumentError",
    "KnowledgeBase",
    "KnowledgeBaseStore",
    "LinguisticTerm",
    "LinguisticVariable",
    "NoRuleFiredError",
    "OutOfUniverseError",
    "OverrideRecord",
    "PiecewiseLinear",
    "RevisionConflictError",
    "Rule",
    "RuleFiring",
    "SessionRecommendation",
    "Trapezoidal",
    "Triangular",
    "Universe",
    "aggregate",
    "apply_edit",
    "defuzzify_centroid",
    "firing_strength",
    "format_fuzzified",
    "fuzzify",
    "infer",
    "infer_fuzzified",
    "interpret_sessions",
    "load_document",
    "membership_degree",
    "parse_kb",
    "parse_rule",
    "render",
    "render_kb",
    "render_report",
    "tokenize",
    "validate",
]
