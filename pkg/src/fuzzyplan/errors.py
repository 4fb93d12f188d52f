"""Exception types shared across the package."""


class FuzzyPlanError(Exception):
    """Base class for all domain errors."""


class OutOfUniverseError(FuzzyPlanError):
    """A crisp value lies outside its variable's universe interval."""

    def __init__(self, variable: str, value: float, lo: float, hi: float):
        self.variable = variable
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__(
            f"value {value:g} for variable '{variable}' is outside its universe [{lo:g}, {hi:g}]"
        )


class NoRuleFiredError(FuzzyPlanError):
    """Every rule fired with strength 0: the aggregated output set is empty."""

    def __init__(self, variable: str):
        self.variable = variable
        super().__init__(
            f"no rule fired above 0 for output variable '{variable}'; "
            "the knowledge base does not cover these inputs"
        )


class ConsultationError(FuzzyPlanError):
    """A consultation request cannot be evaluated (missing input, unknown term, ...)."""


class KbDocumentError(FuzzyPlanError):
    """A knowledge-base document failed to parse or validate.

    Carries the full diagnostic list; `diagnostics` always contains at
    least one error-severity entry.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = next((d for d in self.diagnostics if d.severity == "error"), self.diagnostics[0])
        extra = len(self.diagnostics) - 1
        msg = str(first) if not extra else f"{first} (+{extra} more)"
        super().__init__(msg)


class RevisionConflictError(FuzzyPlanError):
    """An edit carried a stale expected_revision."""

    def __init__(self, expected: int, current: int):
        self.expected = expected
        self.current = current
        super().__init__(
            f"edit expected revision {expected} but the knowledge base is at revision {current}"
        )
