"""Membership-function arithmetic: fuzzification, clipped max-aggregation and
centroid defuzzification.

Every type here is an immutable value and every operation is a pure function,
so evaluation is safe from any number of threads.

Conventions for degenerate edges: a triangle with ``a == b`` (or ``b == c``)
has a vertical side; the peak value 1 is returned exactly at ``b``. Outside
the support every function is 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .errors import NoRuleFiredError, OutOfUniverseError


@dataclass(frozen=True)
class Universe:
    """Closed interval of crisp values a variable ranges over."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"universe requires lo < hi, got [{self.lo:g}, {self.hi:g}]")

    def contains(self, x: float) -> bool:
        return self.lo <= x <= self.hi


@dataclass(frozen=True)
class Triangular:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c):
            raise ValueError(f"triangular requires a <= b <= c, got ({self.a:g}, {self.b:g}, {self.c:g})")
        if not self.a < self.c:
            raise ValueError("triangular requires a < c (zero-width support)")

    def degree(self, x: float) -> float:
        if x == self.b:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a) if x > self.a else 0.0
        return (self.c - x) / (self.c - self.b) if x < self.c else 0.0

    def vertices(self) -> tuple[tuple[float, float], ...]:
        return ((self.a, 0.0), (self.b, 1.0), (self.c, 0.0))


@dataclass(frozen=True)
class Trapezoidal:
    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        if not (self.a <= self.b <= self.c <= self.d):
            raise ValueError(
                f"trapezoidal requires a <= b <= c <= d, got ({self.a:g}, {self.b:g}, {self.c:g}, {self.d:g})"
            )
        if not self.a < self.d:
            raise ValueError("trapezoidal requires a < d (zero-width support)")

    def degree(self, x: float) -> float:
        if self.b <= x <= self.c:
            return 1.0
        if x < self.b:
            return (x - self.a) / (self.b - self.a) if x > self.a else 0.0
        return (self.d - x) / (self.d - self.c) if x < self.d else 0.0

    def vertices(self) -> tuple[tuple[float, float], ...]:
        return ((self.a, 0.0), (self.b, 1.0), (self.c, 1.0), (self.d, 0.0))


@dataclass(frozen=True)
class PiecewiseLinear:
    """Polyline of (x, degree) vertices; x strictly increasing, degrees in [0, 1]."""

    points: tuple[tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(mu)) for x, mu in self.points)
        object.__setattr__(self, "points", pts)
        if len(pts) < 2:
            raise ValueError("piecewise-linear requires at least 2 vertices")
        for (x0, _), (x1, _) in zip(pts, pts[1:]):
            if not x0 < x1:
                raise ValueError("piecewise-linear x-coordinates must be strictly increasing")
        for _, mu in pts:
            if not 0.0 <= mu <= 1.0:
                raise ValueError("piecewise-linear degrees must lie in [0, 1]")

    def degree(self, x: float) -> float:
        pts = self.points
        if x < pts[0][0] or x > pts[-1][0]:
            return 0.0
        for (x0, y0), (x1, y1) in zip(pts, pts[1:]):
            if x <= x1:
                if x == x0:
                    return y0
                t = (x - x0) / (x1 - x0)
                return y0 + t * (y1 - y0)
        return pts[-1][1]

    def vertices(self) -> tuple[tuple[float, float], ...]:
        return self.points


MembershipFunction = Union[Triangular, Trapezoidal, PiecewiseLinear]


def membership_degree(mf: MembershipFunction, x: float) -> float:
    """Degree of ``x`` under ``mf``; total over all reals, 0 outside the support."""
    return mf.degree(x)


def support(mf: MembershipFunction) -> tuple[float, float]:
    xs = [x for x, _ in mf.vertices()]
    return min(xs), max(xs)


@dataclass(frozen=True)
class LinguisticTerm:
    name: str
    mf: MembershipFunction


@dataclass(frozen=True)
class LinguisticVariable:
    name: str
    role: str  # "input" | "output"
    universe: Universe
    terms: tuple[LinguisticTerm, ...]

    def __post_init__(self):
        if self.role not in ("input", "output"):
            raise ValueError(f"variable role must be 'input' or 'output', got {self.role!r}")
        if len(self.terms) < 2:
            raise ValueError(f"variable '{self.name}' needs at least 2 terms")
        names = [t.name for t in self.terms]
        if len(set(names)) != len(names):
            raise ValueError(f"variable '{self.name}' has duplicate term names")
        for t in self.terms:
            lo, hi = support(t.mf)
            if lo < self.universe.lo or hi > self.universe.hi:
                raise ValueError(
                    f"term '{t.name}' of variable '{self.name}' has support [{lo:g}, {hi:g}] "
                    f"outside the universe [{self.universe.lo:g}, {self.universe.hi:g}]"
                )

    def term(self, name: str) -> LinguisticTerm:
        for t in self.terms:
            if t.name == name:
                return t
        raise KeyError(f"variable '{self.name}' has no term '{name}'")

    def term_names(self) -> tuple[str, ...]:
        return tuple(t.name for t in self.terms)


@dataclass(frozen=True)
class FuzzifiedValue:
    """A crisp reading expressed as one membership degree per term."""

    variable: str
    crisp: float
    degrees: Mapping[str, float]  # insertion order == term declaration order


def fuzzify(variable: LinguisticVariable, x: float) -> FuzzifiedValue:
    if not variable.universe.contains(x):
        raise OutOfUniverseError(variable.name, x, variable.universe.lo, variable.universe.hi)
    degrees = {t.name: t.mf.degree(x) for t in variable.terms}
    return FuzzifiedValue(variable=variable.name, crisp=x, degrees=degrees)


def format_fuzzified(fv: FuzzifiedValue) -> str:
    """Render as ``name (C) = {"t1"/d1, ...}`` with uniform 2-decimal values."""
    inner = ", ".join(f'"{t}"/{d:.2f}' for t, d in fv.degrees.items())
    return f"{fv.variable} ({fv.crisp:.2f}) = {{{inner}}}"


@dataclass(frozen=True)
class AggregatedOutputSet:
    """Pointwise max of the output terms clipped at their aggregated levels.

    ``value(x)`` is the defining semantics: max over terms of
    min(alpha_term, mu_term(x)).
    """

    variable: LinguisticVariable
    term_alphas: Mapping[str, float]

    def value(self, x: float) -> float:
        best = 0.0
        for term in self.variable.terms:
            alpha = self.term_alphas.get(term.name, 0.0)
            if alpha <= best:  # cannot beat the current max
                continue
            clipped = min(alpha, term.mf.degree(x))
            if clipped > best:
                best = clipped
        return best


def aggregate(
    contributions: Iterable[tuple[str, float]], variable: LinguisticVariable
) -> AggregatedOutputSet:
    """Combine per-rule clipping levels with max; terms without contributions get 0."""
    alphas = {t.name: 0.0 for t in variable.terms}
    for term_name, alpha in contributions:
        if term_name not in alphas:
            raise ValueError(f"variable '{variable.name}' has no term '{term_name}'")
        if not 0.0 <= alpha <= 1.0:
            raise ValueError(f"contribution level {alpha!r} for term '{term_name}' not in [0, 1]")
        if alpha > alphas[term_name]:
            alphas[term_name] = alpha
    return AggregatedOutputSet(variable=variable, term_alphas=alphas)


@lru_cache(maxsize=128)
def _sampled_terms(
    variable: LinguisticVariable, resolution: int
) -> tuple[tuple[float, ...], tuple[tuple[str, tuple[float, ...]], ...]]:
    # Sample grid and per-term membership values are fixed per (variable,
    # resolution), so cache them across consultations.
    lo, hi = variable.universe.lo, variable.universe.hi
    step = (hi - lo) / (resolution - 1)
    xs = tuple(lo + i * step for i in range(resolution - 1)) + (hi,)
    per_term = tuple((t.name, tuple(t.mf.degree(x) for x in xs)) for t in variable.terms)
    return xs, per_term


def defuzzify_centroid(aggregated: AggregatedOutputSet, resolution: int = 1001) -> float:
    """Center of gravity of the aggregated set, sampled at ``resolution``
    uniformly spaced points with both universe endpoints included."""
    if resolution < 2:
        raise ValueError(f"resolution must be >= 2, got {resolution}")
    alphas = aggregated.term_alphas
    if all(a == 0.0 for a in alphas.values()):
        raise NoRuleFiredError(aggregated.variable.name)
    xs, per_term = _sampled_terms(aggregated.variable, resolution)
    num = 0.0
    den = 0.0
    for i, x in enumerate(xs):
        mu = 0.0
        for name, samples in per_term:
            clipped = min(alphas.get(name, 0.0), samples[i])
            if clipped > mu:
                mu = clipped
        num += x * mu
        den += mu
    if den == 0.0:
        # positive clip levels but no mass on the sample grid
        raise NoRuleFiredError(aggregated.variable.name)
    return num / den
