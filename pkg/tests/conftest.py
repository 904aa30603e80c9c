import random
from fractions import Fraction

import pytest

from birigid import defect as defect_mod
from birigid.poly import Jet, MPoly, parse_poly

P3_VARS = ["x", "y", "z", "t"]

FAC8_BRANCH = "t^6 + x*(y*z*(y-z)*(y+z)*(y-2*z) + x^5)"
FAC8_POINTS = [(0, 1, 0, 0), (0, 0, 1, 0), (0, 1, 1, 0), (0, 1, -1, 0), (0, 2, 1, 0)]

LINES_BRANCH = "x*y*(x+y-z)*(2*x-y-z) + t^3*z"
LINES_POINTS = [(0, 0, 1, 0), (0, 1, 1, 0), (0, 1, -1, 0),
                (1, 0, 1, 0), (1, 0, 2, 0), (2, 1, 3, 0)]


def t_direction_jet(coords) -> Jet:
    """Linear jet moving along the t coordinate at a point with t = 0."""
    chart = next(i for i, c in enumerate(coords) if c != 0)
    base = tuple(Fraction(c, coords[chart]) for i, c in enumerate(coords)
                 if i != chart)
    t_slot = 3 if chart > 3 else 2  # index of t after dropping the chart
    return Jet(chart, base, {t_slot: (Fraction(1), Fraction(0))})


@pytest.fixture(scope="session")
def fac8_config() -> defect_mod.BranchConfig:
    branch = parse_poly(FAC8_BRANCH, P3_VARS)
    points = [defect_mod.BranchSingularPoint(c, 5, t_direction_jet(c))
              for c in FAC8_POINTS]
    return defect_mod.BranchConfig(3, branch, points)


@pytest.fixture(scope="session")
def lines_config() -> defect_mod.BranchConfig:
    branch = parse_poly(LINES_BRANCH, P3_VARS)
    points = [defect_mod.BranchSingularPoint(c, 2) for c in LINES_POINTS]
    return defect_mod.BranchConfig(2, branch, points)


def random_mpoly(rng: random.Random, arity: int, max_deg: int = 3,
                 n_terms: int = 5) -> MPoly:
    terms = {}
    for _ in range(n_terms):
        e = tuple(rng.randint(0, max_deg) for _ in range(arity))
        terms[e] = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
    return MPoly(arity, terms)
