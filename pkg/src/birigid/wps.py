"""Weighted projective spaces and the embedded catalogue of 96 Fano
threefold families (78 weighted hypersurfaces, 18 codimension-2 weighted
complete intersections), together with degree/case arithmetic, seeded
generic members, coordinate restrictions, and an exact solver for the
singular-point candidates on coordinate strata of dimension at most one.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .poly import (MPoly, NotFiniteError, PolyError,
                   univariate_common_roots)

DATA_PATH = Path(__file__).parent / "data" / "families.json"

# sha256 of the shipped families.json; table commands refuse silently
# modified default data.
FAMILIES_SHA256 = "fd6b6e7ef70db5e37b9b64edf088fc63f904595dfa11dd27a0015a87fc6e15c3"

HYP_VARS = ("x", "y", "z", "t", "w")
WCI_VARS = ("x", "y", "z", "t", "v", "w")

CASE_SYMBOLS = {"heart": "♥", "diamond": "♦", "club": "♣", "": "-"}


class WpsError(ValueError):
    pass


class DataIntegrityError(WpsError):
    pass


@dataclass(frozen=True)
class WeightSystem:
    weights: tuple[int, ...]

    def __init__(self, weights: Sequence[int]):
        ws = tuple(int(a) for a in weights)
        if any(a < 1 for a in ws):
            raise WpsError("weights must be positive")
        object.__setattr__(self, "weights", ws)

    def __len__(self) -> int:
        return len(self.weights)

    def __getitem__(self, i: int) -> int:
        return self.weights[i]

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.weights))

    def max_lcm(self, idxs: Iterable[int] | None = None) -> int:
        idxs = list(range(len(self.weights))) if idxs is None else list(idxs)
        return max(lcm(self.weights[i], self.weights[j])
                   for i in idxs for j in idxs)


@dataclass(frozen=True)
class FanoFamily:
    id: int
    kind: str                      # "hyp" | "wci2"
    weights: WeightSystem
    degrees: tuple[int, ...]
    k3: Fraction
    case: str                      # "heart" | "diamond" | "club" | ""
    smooth_recipe: Mapping
    ca1_recipe: Mapping

    @property
    def ambient_dim(self) -> int:
        return len(self.weights)

    @property
    def vars(self) -> tuple[str, ...]:
        return HYP_VARS if self.kind == "hyp" else WCI_VARS

    def codim(self) -> int:
        return 1 if self.kind == "hyp" else 2


def _record_to_family(rec: Mapping) -> FanoFamily:
    return FanoFamily(
        id=int(rec["id"]),
        kind=rec["kind"],
        weights=WeightSystem(rec["weights"]),
        degrees=tuple(int(d) for d in rec["degrees"]),
        k3=Fraction(rec["k3"]),
        case=rec["case"],
        smooth_recipe=dict(rec["smooth_recipe"]),
        ca1_recipe=dict(rec["ca1_recipe"]),
    )


def data_digest(path: Path | str = DATA_PATH) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def load_families(path: Path | str | None = None,
                  verify_hash: bool = True) -> dict[int, dict[str, FanoFamily]]:
    """Load the family catalogue keyed by kind then id."""
    src = Path(path) if path is not None else DATA_PATH
    if verify_hash and path is None and data_digest(src) != FAMILIES_SHA256:
        raise DataIntegrityError(
            "families.json does not match the built-in manifest hash")
    with open(src) as fh:
        records = json.load(fh)
    out: dict[str, dict[int, FanoFamily]] = {"hyp": {}, "wci2": {}}
    for rec in records:
        fam = _record_to_family(rec)
        out[fam.kind][fam.id] = fam
    return out


@lru_cache(maxsize=1)
def families() -> dict[str, dict[int, FanoFamily]]:
    return load_families()


def get_family(fid: int, kind: str = "hyp") -> FanoFamily:
    try:
        return families()[kind][fid]
    except KeyError:
        raise WpsError(f"no {kind} family with id {fid}") from None


def all_families() -> list[FanoFamily]:
    fams = families()
    return list(fams["hyp"].values()) + list(fams["wci2"].values())


# -- table arithmetic ---------------------------------------------------------

def anticanonical_cube(fam: FanoFamily) -> Fraction:
    """Degree (product of equation degrees) over the product of weights."""
    prod = 1
    for a in fam.weights.weights:
        prod *= a
    num = 1
    for d in fam.degrees:
        num *= d
    return Fraction(num, prod)


def index_one_identity(fam: FanoFamily) -> bool:
    return sum(fam.degrees) == sum(fam.weights.weights) - 1


def classify_case(fam: FanoFamily) -> str:
    """Case mark of a hypersurface family; precedence heart > diamond > club
    (family 41 satisfies both the heart and diamond conditions and the
    catalogue marks it heart)."""
    if fam.kind != "hyp":
        raise WpsError("case classification applies to hypersurface families only")
    ws = fam.weights
    d = fam.degrees[0]
    threshold = 2 / anticanonical_cube(fam)
    if ws.max_lcm() <= threshold:
        return "heart"
    if ws[3] < ws[4] and d % ws[4] == 0 and ws.max_lcm((0, 1, 2, 3)) <= threshold:
        return "diamond"
    if (ws[2] < ws[3] < ws[4] and d % ws[3] == 0
            and ws.max_lcm((0, 1, 2, 4)) <= threshold):
        return "club"
    return ""


# -- monomial enumeration and generic members ---------------------------------

def weighted_monomials(weights: Sequence[int], degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples e with sum_i weights[i]*e[i] == degree, in a
    fixed lexicographic order."""
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, prefix: tuple[int, ...]):
        if i == len(weights) - 1:
            if remaining % weights[i] == 0:
                out.append(prefix + (remaining // weights[i],))
            return
        w = weights[i]
        for k in range(remaining // w, -1, -1):
            rec(i + 1, remaining - w * k, prefix + (k,))

    rec(0, degree, ())
    return out


def _random_member(weights: Sequence[int], degree: int,
                   vars: Sequence[str], rng: random.Random) -> MPoly:
    terms = {}
    for e in weighted_monomials(weights, degree):
        terms[e] = Fraction(rng.randint(1, 97))
    return MPoly(len(weights), terms, vars)


def generic_member(fam: FanoFamily, seed: int):
    """Weighted-homogeneous member(s) of the family with pseudo-random
    nonzero coefficients on every monomial, deterministic in the seed.
    Returns one MPoly for hypersurfaces, a pair for codimension 2."""
    rng = random.Random(seed)
    ws = fam.weights.weights
    polys = [_random_member(ws, d, fam.vars, rng) for d in fam.degrees]
    return polys[0] if fam.kind == "hyp" else tuple(polys)


# -- restriction to the z,t,w coordinates (blank families table) ---------------

# Coefficient conditions on f(0,0,z,t,w), keyed by family id.  Each entry
# lists ("all", exps) monomials whose coefficients must all be nonzero and
# optionally ("any", [exps...]) groups where at least one must be nonzero.
# Exponents are in the restricted variables (z, t, w).
RESTRICT_CONDITIONS: dict[int, list[tuple[str, list[tuple[int, int, int]]]]] = {
    16: [("all", [(1, 0, 2), (0, 3, 0)])],
    17: [("all", [(4, 0, 0)])],
    25: [("any", [(0, 2, 1), (1, 3, 0)]), ("all", [(5, 0, 0)])],
    31: [("all", [(1, 0, 2), (4, 0, 0)])],
    36: [("all", [(1, 0, 2), (0, 3, 0), (3, 1, 0)])],
    46: [("all", [(0, 3, 0), (7, 0, 0)])],
    47: [("all", [(1, 0, 2), (0, 3, 0)])],
}

RESTRICT_FAMILY_IDS = tuple(sorted(RESTRICT_CONDITIONS))


def _monomial_name(exps: tuple[int, int, int]) -> str:
    parts = []
    for name, k in zip(("z", "t", "w"), exps):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


@dataclass(frozen=True)
class RestrictionReport:
    restricted: MPoly               # polynomial in (z, t, w)
    conditions: tuple[tuple[str, bool], ...]

    @property
    def all_satisfied(self) -> bool:
        return all(ok for _, ok in self.conditions)


def restrict_descrf(fid: int, f: MPoly) -> RestrictionReport:
    """Restrict a member of one of the seven blank hypersurface families to
    x = y = 0 and check the catalogued coefficient conditions."""
    if fid not in RESTRICT_CONDITIONS:
        raise WpsError(f"family {fid} has no restriction table entry")
    fam = get_family(fid, "hyp")
    if f.arity != 5:
        raise WpsError("expected a polynomial in the five ambient coordinates")
    if not f.is_weighted_homogeneous(fam.weights.weights, fam.degrees[0]):
        raise WpsError(
            f"polynomial is not weighted-homogeneous of degree {fam.degrees[0]}")
    restricted = f.substitute_zeros([0, 1]).project([2, 3, 4], ("z", "t", "w"))
    checks = []
    for kind, group in RESTRICT_CONDITIONS[fid]:
        if kind == "all":
            for e in group:
                ok = restricted.coefficient(e) != 0
                checks.append((f"{_monomial_name(e)} nonzero", ok))
        else:
            ok = any(restricted.coefficient(e) != 0 for e in group)
            label = " or ".join(_monomial_name(e) for e in group)
            checks.append((f"{label} nonzero", ok))
    return RestrictionReport(restricted, tuple(checks))


# -- coordinate strata ----------------------------------------------------------

@dataclass(frozen=True)
class CoordinateStratum:
    zero_set: frozenset[int]
    chart: int | None = None

    def __init__(self, zero_set: Iterable[int], chart: int | None = None):
        zs = frozenset(int(i) for i in zero_set)
        if chart is not None and chart in zs:
            raise WpsError("chart index cannot be in the zero set")
        object.__setattr__(self, "zero_set", zs)
        object.__setattr__(self, "chart", chart)


class ExactSolveError(WpsError):
    """The candidate system needs elimination beyond univariate machinery."""


@dataclass(frozen=True)
class StratumPoints:
    """Candidate non-quasi-smooth points of a coordinate stratum.

    `points` collects candidates in the smooth locus of the ambient space;
    candidates at quotient points of the ambient (all nonzero coordinates
    of weight sharing a common factor > 1) are listed separately since the
    exclusion arguments treat them through different machinery.
    """

    points: tuple[tuple[Fraction, ...], ...]
    may_have_irrational: bool
    ambient_singular: tuple[tuple[Fraction, ...], ...]


def _unit_point(arity: int, idx: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(1) if i == idx else Fraction(0) for i in range(arity))


def _torus_univariate(p: MPoly, u: int, v: int, du: int, dv: int) -> MPoly:
    """Rewrite a weighted-homogeneous p supported on {u, v} as a univariate
    polynomial in the torus coordinate tau = x_v^du / x_u^dv."""
    betas = [e[v] for e in p.terms]
    beta0 = min(betas)
    terms = {}
    for e, c in p.terms.items():
        k, r = divmod(e[v] - beta0, du)
        if r:
            raise PolyError("terms are not weighted-compatible")  # pragma: no cover
        exps = [0] * p.arity
        exps[0] = k
        terms[tuple(exps)] = c
    return MPoly(p.arity, terms, p.vars)


def _bezout(a: int, b: int) -> tuple[int, int]:
    """Integers (m, n) with a*n - b*m = 1 for coprime a, b."""
    # extended Euclid: find s, t with a*s + b*t = 1, then n = s, m = -t
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    assert old_r == 1
    return -old_t, old_s


def _tau_point(arity: int, u: int, v: int, du: int, dv: int,
               tau: Fraction) -> tuple[Fraction, ...]:
    m, n = _bezout(du, dv)  # du*n - dv*m = 1
    coords = [Fraction(0)] * arity
    coords[u] = tau ** m
    coords[v] = tau ** n
    return tuple(coords)


def stratum_singular_points(fs: MPoly | Sequence[MPoly],
                            weights: WeightSystem | Sequence[int],
                            stratum: CoordinateStratum) -> StratumPoints:
    """Rational points of the coordinate stratum at which every partial
    derivative of the restricted defining polynomial(s) with respect to the
    free variables vanishes.

    The stratum must cut the variety in dimension at most one.  The flag is
    set when nonrational candidates may remain; a provably positive-
    dimensional candidate locus raises NotFiniteError.
    """
    polys = [fs] if isinstance(fs, MPoly) else list(fs)
    if not polys:
        raise WpsError("need at least one defining polynomial")
    ws = weights.weights if isinstance(weights, WeightSystem) else tuple(weights)
    arity = polys[0].arity
    if any(p.arity != arity for p in polys) or len(ws) != arity:
        raise WpsError("arity mismatch between polynomials and weights")
    for p in polys:
        if not p.is_weighted_homogeneous(ws):
            raise WpsError("defining polynomials must be weighted-homogeneous")
    free = sorted(set(range(arity)) - stratum.zero_set)
    if stratum.chart is not None and stratum.chart not in free:
        raise WpsError("chart variable is constrained to zero")
    if (len(free) - 1) - len(polys) > 1:
        raise WpsError("stratum cuts the variety in dimension greater than 1")

    restricted = [p.substitute_zeros(stratum.zero_set) for p in polys]
    partials = [p.partial(v) for p in restricted for v in free]

    found: list[tuple[Fraction, ...]] = []
    flagged = False

    def patterns():
        items = list(free)
        for mask in range(1, 1 << len(items)):
            yield frozenset(items[i] for i in range(len(items))
                            if mask >> i & 1)

    for support in patterns():
        if stratum.chart is not None and stratum.chart not in support:
            continue
        off = [v for v in free if v not in support]
        ps = [p.substitute_zeros(off) for p in partials]
        nonzero = [p for p in ps if not p.is_zero()]
        if not nonzero:
            if len(support) == 1:
                found.append(_unit_point(arity, next(iter(support))))
                continue
            raise NotFiniteError(
                "all partials vanish on a torus of positive projective dimension")
        active: set[int] = set()
        for p in nonzero:
            active |= p.support_vars()
        if len(active) <= 1:
            # homogeneous single-variable restrictions are monomials, which
            # cannot vanish where the pattern requires the variable nonzero
            continue
        if len(active) == 2:
            u, v = sorted(active)
            g = gcd(ws[u], ws[v])
            du, dv = ws[u] // g, ws[v] // g
            taus = univariate_common_roots(
                [_torus_univariate(p, u, v, du, dv) for p in nonzero])
            roots = [r for r in taus.roots if r != 0]
            if support != active:
                if roots or taus.may_have_irrational:
                    raise NotFiniteError(
                        "torus-invariant candidate locus of positive dimension")
                continue
            flagged = flagged or taus.may_have_irrational
            for tau in roots:
                found.append(_tau_point(arity, u, v, du, dv, tau))
            continue
        if any(len(p.terms) == 1 for p in nonzero):
            continue  # a pure monomial cannot vanish on the full torus
        raise ExactSolveError(
            "candidate system on a 3-torus is outside univariate machinery")

    smooth, quotient = [], []
    for pt in found:
        sup = [i for i, c in enumerate(pt) if c != 0]
        g = 0
        for i in sup:
            g = gcd(g, ws[i])
        (quotient if g > 1 else smooth).append(pt)
    return StratumPoints(tuple(smooth), flagged, tuple(quotient))
