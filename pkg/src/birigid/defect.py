"""Factoriality of double solids through the defect criterion.

A double cover of projective 3-space branched in a degree-2r surface with
A-type singular points is factorial exactly when the point conditions
(value and leading normal-direction derivatives of sections of degree
3r-4) are linearly independent.  The defect equals the number of imposed
conditions minus the rank of the condition matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Sequence

from .linalg import RatMatrix
from .poly import Jet, MPoly, arc_derivatives

P3_VARS = ("x", "y", "z", "t")


class DefectError(ValueError):
    pass


def h0_dim(r: int) -> int:
    """Dimension (3r-1)(3r-2)(r-1)/2 of the space of degree-(3r-4) forms
    on projective 3-space."""
    if r < 2:
        raise DefectError("r must be at least 2")
    val = (3 * r - 1) * (3 * r - 2) * (r - 1) // 2
    assert val == comb(3 * r - 4 + 3, 3)
    return val


def conditions_for(m: int) -> int:
    """Number of linear conditions an A_m point imposes: ceil(m/2)."""
    if m < 1:
        raise DefectError("A-type index must be at least 1")
    return (m + 1) // 2


def mu(types: Sequence[int]) -> int:
    return sum(conditions_for(m) for m in types)


@dataclass(frozen=True)
class BranchSingularPoint:
    coords: tuple[Fraction, ...]     # homogeneous coordinates in P^3
    m: int                           # A_m
    direction: Jet | None = None     # required when m >= 3

    def __init__(self, coords, m: int, direction: Jet | None = None):
        coords = tuple(Fraction(c) for c in coords)
        if len(coords) != 4 or all(c == 0 for c in coords):
            raise DefectError("expected nonzero homogeneous coordinates in P^3")
        object.__setattr__(self, "coords", coords)
        object.__setattr__(self, "m", int(m))
        object.__setattr__(self, "direction", direction)
        if self.m < 1:
            raise DefectError("A-type index must be at least 1")

    @property
    def max_order(self) -> int:
        return conditions_for(self.m) - 1

    def chart(self) -> int:
        if self.direction is not None:
            c = self.direction.chart
            if self.coords[c] == 0:
                raise DefectError("jet chart coordinate vanishes at the point")
            return c
        for i, c in enumerate(self.coords):
            if c != 0:
                return i
        raise DefectError("zero point")  # pragma: no cover

    def affine_base(self) -> tuple[Fraction, ...]:
        c = self.chart()
        scale = self.coords[c]
        return tuple(v / scale for i, v in enumerate(self.coords) if i != c)


@dataclass(frozen=True)
class BranchConfig:
    r: int
    branch: MPoly                    # homogeneous of degree 2r in (x,y,z,t)
    points: tuple[BranchSingularPoint, ...]

    def __init__(self, r: int, branch: MPoly, points: Sequence[BranchSingularPoint]):
        if r < 2:
            raise DefectError("r must be at least 2")
        if branch.arity != 4:
            raise DefectError("branch polynomial must live in (x, y, z, t)")
        degs = {sum(e) for e in branch.terms}
        if degs != {2 * r}:
            raise DefectError(f"branch polynomial must be homogeneous of degree {2 * r}")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "branch", branch)
        object.__setattr__(self, "points", tuple(points))


def _validate_singular(cfg: BranchConfig, p: BranchSingularPoint):
    if cfg.branch.eval(p.coords) != 0:
        raise DefectError(f"declared point {p.coords} is not on the branch surface")
    for v in range(4):
        if cfg.branch.partial(v).eval(p.coords) != 0:
            raise DefectError(f"branch surface is smooth at {p.coords}")


def _dehomogenize(mono: tuple[int, ...], chart: int) -> tuple[int, ...]:
    return tuple(e for i, e in enumerate(mono) if i != chart)


def _point_jet(p: BranchSingularPoint) -> Jet:
    base = p.affine_base()
    if p.direction is None:
        raise DefectError(
            f"point of type A_{p.m} needs a direction jet for its "
            "derivative conditions")
    jet = p.direction
    if jet.base != base:
        jet = Jet(jet.chart, base, jet.arc, jet.certified_order)
    return jet


def _check_jet_order(p: BranchSingularPoint, jet: Jet):
    """Accept the jet for the point's top condition order.

    Orders up to 2 are covered by the shipped machinery: a straight arc is
    taken as the user's assertion that the normal-direction coordinate
    curve is a line, and a quadratic arc carries its own order-2 data.
    Beyond order 2 an explicit certified_order is required rather than
    silently extrapolating the arc.
    """
    needed = p.max_order
    if needed <= 0:
        return
    if jet.certified_order is not None:
        if jet.certified_order < needed:
            raise DefectError(
                f"jet certified to order {jet.certified_order} cannot carry "
                f"an order-{needed} condition")
        return
    if needed <= 2:
        return
    raise DefectError(
        f"A_{p.m} conditions need derivatives of order {needed}; certify "
        "the jet order explicitly")


def degree_monomials(degree: int) -> list[tuple[int, int, int, int]]:
    """Exponents of all degree-`degree` monomials in 4 variables, ordered
    lexicographically descending (x-heavy first)."""
    out = []
    for a in range(degree, -1, -1):
        for b in range(degree - a, -1, -1):
            for c in range(degree - a - b, -1, -1):
                out.append((a, b, c, degree - a - b - c))
    return out


def condition_matrix(cfg: BranchConfig, validate: bool = True) -> RatMatrix:
    """Rows: conditions per point (value, then derivative orders); columns:
    degree-(3r-4) monomials; entry: the condition functional applied to the
    monomial dehomogenized on the point's chart."""
    degree = 3 * cfg.r - 4
    monos = degree_monomials(degree)
    rows: list[list[Fraction]] = []
    for p in cfg.points:
        if validate:
            _validate_singular(cfg, p)
        chart = p.chart()
        base = p.affine_base()
        if p.max_order == 0:
            rows.append([_monomial_eval(m, chart, base) for m in monos])
            continue
        jet = _point_jet(p)
        _check_jet_order(p, jet)
        per_order: list[list[Fraction]] = [[] for _ in range(p.max_order + 1)]
        for mono in monos:
            exps = _dehomogenize(mono, chart)
            poly = MPoly(3, {exps: Fraction(1)})
            deriv = arc_derivatives(poly, jet, p.max_order)
            for j in range(p.max_order + 1):
                per_order[j].append(deriv.values[j])
        rows.extend(per_order)
    return RatMatrix.from_rows(rows) if rows else RatMatrix(0, len(monos), [])


def _monomial_eval(mono: tuple[int, ...], chart: int,
                   base: tuple[Fraction, ...]) -> Fraction:
    val = Fraction(1)
    j = 0
    for i, e in enumerate(mono):
        if i == chart:
            continue
        if e:
            val *= base[j] ** e
        j += 1
    return val


@dataclass(frozen=True)
class DefectReport:
    mu: int
    h0: int
    rank: int | None
    delta: int | None
    factorial: bool
    screened: bool = False

    def to_json(self) -> dict:
        return {"mu": self.mu, "h0": self.h0, "rank": self.rank,
                "delta": self.delta, "factorial": self.factorial,
                "screened": self.screened}


def screen(types: Sequence[int], r: int) -> DefectReport:
    """Necessary condition only: mu may not exceed the section space
    dimension.  Failing it forces a positive defect with no matrix work."""
    m = mu(types)
    h0 = h0_dim(r)
    if m > h0:
        return DefectReport(m, h0, None, None, False, screened=True)
    return DefectReport(m, h0, None, None, True, screened=True)


def defect(cfg: BranchConfig, validate: bool = True) -> DefectReport:
    """delta = mu - rank(condition matrix); the solid is factorial exactly
    when delta is zero."""
    m = mu([p.m for p in cfg.points])
    h0 = h0_dim(cfg.r)
    if m > h0:
        # rank <= h0 < mu, so the defect is positive without the matrix
        return DefectReport(m, h0, None, None, False, screened=True)
    matrix = condition_matrix(cfg, validate=validate)
    rank = matrix.rank()
    delta = m - rank
    return DefectReport(m, h0, rank, delta, delta == 0)


def check_is_A_type(branch: MPoly, point: Sequence) -> bool:
    """Necessary screen for a declared A-type point: the gradient vanishes
    and the chart Hessian has rank at least 2."""
    coords = tuple(Fraction(c) for c in point)
    if branch.eval(coords) != 0:
        raise DefectError("point is not on the branch surface")
    for v in range(branch.arity):
        if branch.partial(v).eval(coords) != 0:
            return False
    chart = next(i for i, c in enumerate(coords) if c != 0)
    kept = [i for i in range(branch.arity) if i != chart]
    # second partials at any cone representative are one common scalar
    # multiple of the affine chart Hessian, so the rank is the same
    hess = [[branch.partial(a).partial(b).eval(coords) for b in kept]
            for a in kept]
    return RatMatrix.from_rows(hess).rank() >= 2
