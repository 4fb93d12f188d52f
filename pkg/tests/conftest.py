import random

import numpy as np
import pytest

from fuzzyplan.document import load_document
from fuzzyplan.fixture import EXAMPLE_INPUTS, SPEECH_THERAPY_KB
from fuzzyplan.membership import LinguisticTerm, LinguisticVariable, PiecewiseLinear, Universe


@pytest.fixture(scope="session")
def fixture_kb():
    return load_document(SPEECH_THERAPY_KB)


@pytest.fixture(scope="session")
def fixture_inputs():
    return dict(EXAMPLE_INPUTS)


# Degree table of the worked clinical example; drives the exact min/max
# checks independently of membership-function shapes.
EXACT_DEGREES = {
    "speech_problems_level": {"low": 0.37, "normal": 0.62, "high": 0.0},
    "family_implication": {"reduce": 0.0, "moderate": 1.0, "high": 0.0},
    "child_age": {"small": 0.25, "medium": 0.5, "big": 0.0},
}

EXACT_ALPHAS = [0.00, 0.25, 0.37, 0.25, 0.50]
EXACT_AGGREGATE = {"high": 0.00, "low": 0.37, "normal": 0.50}


def oracle_centroid(variable, term_alphas, resolution):
    """Brute-force center of gravity at 10x the engine's resolution.

    Independent route: numpy interpolation over the membership-function
    vertex polylines, never the engine's own degree evaluation.
    """
    n = resolution * 10
    xs = np.linspace(variable.universe.lo, variable.universe.hi, n)
    mu = np.zeros(n)
    for term in variable.terms:
        alpha = term_alphas.get(term.name, 0.0)
        verts = np.asarray(term.mf.vertices(), dtype=float)
        vals = np.interp(xs, verts[:, 0], verts[:, 1], left=0.0, right=0.0)
        mu = np.maximum(mu, np.minimum(alpha, vals))
    total = mu.sum()
    assert total > 0, "oracle asked to integrate an empty set"
    return float((xs * mu).sum() / total)


def random_piecewise_variable(rng: random.Random, name="out", role="output", well_conditioned=False):
    """Output variable with 2-4 random piecewise-linear terms, no vertical edges.

    ``well_conditioned`` keeps the universe positive, segments wide relative
    to the sampling grid and supports carrying real mass, so a sampling
    centroid is comparable against the oracle at tight relative tolerance;
    the loose variant exercises bounds and translation properties only.
    """
    if well_conditioned:
        lo = rng.uniform(1.0, 10.0)
        width = rng.uniform(4.0, 20.0)
        min_gap = width / 30.0
    else:
        lo = rng.uniform(-20.0, 20.0)
        width = rng.uniform(2.0, 30.0)
        min_gap = 1e-3
    hi = lo + width
    terms = []
    for i in range(rng.randint(2, 4)):
        k = rng.randint(3, 6) if well_conditioned else rng.randint(2, 6)
        xs = sorted(rng.uniform(lo, hi) for _ in range(k))
        while any(b - a < min_gap for a, b in zip(xs, xs[1:])):
            xs = sorted(rng.uniform(lo, hi) for _ in range(k))
        mus = [round(rng.random(), 6) for _ in range(k)]
        if well_conditioned:
            mus[0] = mus[-1] = 0.0
            mus[rng.randrange(1, k - 1)] = round(rng.uniform(0.5, 1.0), 6)
        pts = tuple((x, mu) for x, mu in zip(xs, mus))
        terms.append((f"t{i}", pts))
    return LinguisticVariable(
        name=name,
        role=role,
        universe=Universe(lo, hi),
        terms=tuple(LinguisticTerm(n, PiecewiseLinear(pts)) for n, pts in terms),
    )


def generate_scale_kb(num_rules=150, num_inputs=5, seed=7):
    """Synthetic valid document: triangular partitions over [0, 10] and
    `num_rules` rules with pairwise distinct antecedent sets.

    The single-antecedent rules cover every (variable, term) pair, so some
    rule fires for every in-universe input combination.
    """
    rng = random.Random(seed)
    term_names = ["low", "mid", "high"]
    names = [f"factor_{i + 1}" for i in range(num_inputs)]
    blocks = []
    for name in names:
        blocks.append(
            f"variable {name} input range 0 10 {{\n"
            "  term low tri 0 0 5\n"
            "  term mid tri 0 5 10\n"
            "  term high tri 5 10 10\n"
            "}"
        )
    blocks.append(
        "variable plan output range 0 10 {\n"
        "  term low tri 0 0 5\n"
        "  term mid tri 0 5 10\n"
        "  term high tri 5 10 10\n"
        "}"
    )
    rules = []
    seen = set()
    for vi, name in enumerate(names):
        for ti, term in enumerate(term_names):
            out = term_names[(vi + ti) % 3]
            rules.append(f"IF ({name} is {term}) THEN plan is {out};")
            seen.add(frozenset([(name, term)]))
    attempts = 0
    while len(rules) < num_rules:
        attempts += 1
        assert attempts < 100_000
        size = rng.randint(2, min(3, num_inputs))
        chosen = rng.sample(names, size)
        ants = [(v, rng.choice(term_names)) for v in sorted(chosen)]
        key = frozenset(ants)
        if key in seen:
            continue
        seen.add(key)
        out = term_names[sum(term_names.index(t) for _, t in ants) % 3]
        clauses = " and ".join(f"({v} is {t})" for v, t in ants)
        rules.append(f"IF {clauses} THEN plan is {out};")
    return "\n\n".join(blocks) + "\n\n" + "\n".join(rules) + "\n"
