"""Extended dual graphs A_{n,k} on double-solid pencil surfaces: correction
terms, the germ classification decision rules, self-intersection of a
rational curve through the classified points, and the degree-1 curve
exclusion verdict."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Sequence

from .linalg import RatMatrix
from .poly import MPoly

# generic slopes tried when a coordinate pencil member degenerates
THETA_RETRY = (Fraction(7, 3), Fraction(3, 5), Fraction(11, 2),
               Fraction(2), Fraction(5), Fraction(-4, 7))


class DualGraphError(ValueError):
    pass


@dataclass(frozen=True)
class GraphType:
    n: int
    k: int

    def __post_init__(self):
        if not 1 <= self.k <= self.n:
            raise DualGraphError("need 1 <= k <= n")

    def __str__(self) -> str:
        return f"A_{{{self.n},{self.k}}}"


A11 = GraphType(1, 1)
A21 = GraphType(2, 1)
A32 = GraphType(3, 2)
A53 = GraphType(5, 3)


def correction_term(t: GraphType) -> Fraction:
    """k (n - k + 1) / (n + 1), the self-intersection correction of an
    A_{n,k} extended dual graph."""
    return Fraction(t.k * (t.n - t.k + 1), t.n + 1)


@dataclass(frozen=True)
class GermFlags:
    singularity: str          # "cA1" | "cA2"
    contact: int              # multiplicity of the point in the curve pair
    ell_nonzero: bool | None = None
    alpha2_nonzero: bool | None = None

    def __post_init__(self):
        if self.singularity not in ("cA1", "cA2"):
            raise DualGraphError("singularity must be 'cA1' or 'cA2'")
        if self.contact not in (1, 2, 3):
            raise DualGraphError("contact multiplicity must be 1, 2 or 3")


def classify_germ(flags: GermFlags) -> GraphType:
    """Decision table for the extended dual graph of the pencil surface at
    a classified point."""
    s, m = flags.singularity, flags.contact
    if s == "cA1":
        if m == 1:
            return A11
        if flags.ell_nonzero is None:
            raise DualGraphError("need the ell(z,t) flag for cA1 contact >= 2")
        if flags.ell_nonzero:
            return A11
        if m == 2:
            return A32
        if flags.alpha2_nonzero is None:
            raise DualGraphError("need the alpha2 flag for cA1 contact 3 with ell = 0")
        return A32 if flags.alpha2_nonzero else A53
    # cA2
    if m == 1:
        return A21
    if m == 2:
        return A32
    if flags.alpha2_nonzero is None:
        raise DualGraphError("need the alpha2 flag for cA2 contact 3")
    return A32 if flags.alpha2_nonzero else A53


def admissible_types(singularity: str, contact: int) -> tuple[GraphType, ...]:
    """All graph types the classifier can output for the given germ row."""
    if singularity == "cA1":
        return {1: (A11,), 2: (A11, A32), 3: (A11, A32, A53)}[contact]
    return {1: (A21,), 2: (A32,), 3: (A32, A53)}[contact]


# -- extraction of the flags from a defining equation -------------------------

def _quadratic_form_rank(f2: MPoly) -> int:
    """Rank of a quadratic form in (y, z, t) given as a 3-variable MPoly."""
    m = [[Fraction(0)] * 3 for _ in range(3)]
    for e, c in f2.terms.items():
        if sum(e) != 2:
            raise DualGraphError("f2 must be homogeneous of degree 2")
        idx = [i for i, k in enumerate(e) for _ in range(k)]
        i, j = idx
        if i == j:
            m[i][i] += c
        else:
            m[i][j] += c / 2
            m[j][i] += c / 2
    return RatMatrix.from_rows(m).rank()


def flags_from_equation(fs: Sequence[MPoly], contact: tuple, theta=None) -> GermFlags:
    """Extract the germ flags from the quintuple (f2, ..., f6) of forms in
    (y, z, t) and the contact coefficients (lambda, mu, nu).

    The pencil member t = theta*z is taken for a fixed generic rational
    theta; a degenerate choice is detected and retried from a fixed list,
    so a flag is reported zero only when it vanishes for every slope.
    """
    if len(fs) != 5:
        raise DualGraphError("expected the five forms f2..f6")
    for i, f in enumerate(fs):
        if f.arity != 3:
            raise DualGraphError("forms must be polynomials in (y, z, t)")
        degs = {sum(e) for e in f.terms}
        if degs and degs != {i + 2}:
            raise DualGraphError(f"f{i + 2} must be homogeneous of degree {i + 2}")
    lam, mu, nu = (Fraction(c) for c in contact)
    if (lam, mu, nu) == (0, 0, 0):
        raise DualGraphError("contact coefficients cannot all vanish")
    # consistency: restricting to z = t = 0 must produce the declared square
    expected = {2: lam * lam, 3: 2 * lam * mu, 4: mu * mu + 2 * lam * nu,
                5: 2 * mu * nu, 6: nu * nu}
    for i, f in enumerate(fs):
        d = i + 2
        restriction = f.coefficient((d, 0, 0))
        if restriction != expected[d]:
            raise DualGraphError(
                f"f{d}(y,0,0) = {restriction}*y^{d} does not match the "
                f"square of the contact section (expected {expected[d]})")
    m = 1 if lam != 0 else (2 if mu != 0 else 3)

    f2 = fs[0]
    rank = _quadratic_form_rank(f2)
    if rank == 0:
        raise DualGraphError("f2 vanishes: germ is worse than cA2")
    if rank >= 2:
        singularity = "cA1"
    else:
        # rank-1 quadratic part: the covered germs are the cA2 shapes
        f3 = fs[1]
        if m == 1:
            only_y = all(e == (2, 0, 0) for e in f2.terms)
            f3_zt = f3.substitute_zeros([0])
            if not only_y or f3_zt.is_zero():
                raise DualGraphError("rank-1 germ outside the classified cA2 shapes")
        else:
            if any(e[0] for e in f2.terms):
                raise DualGraphError("rank-1 germ outside the classified cA2 shapes")
        singularity = "cA2"

    # ell(z,t): the part of f2 linear in y
    ell_coeffs = (f2.coefficient((1, 1, 0)), f2.coefficient((1, 0, 1)))
    ell_nonzero = any(c != 0 for c in ell_coeffs)

    need_alpha2 = (singularity == "cA1" and m == 3 and not ell_nonzero) or \
                  (singularity == "cA2" and m == 3)
    alpha2_nonzero = None
    if need_alpha2:
        thetas = (theta,) if theta is not None else THETA_RETRY
        alpha2_nonzero = _alpha2_flag(fs, thetas)
    if singularity == "cA1" and m == 1:
        ell_flag = None
    else:
        ell_flag = ell_nonzero
    return GermFlags(singularity, m, ell_flag, alpha2_nonzero)


def _alpha2_flag(fs: Sequence[MPoly], thetas) -> bool:
    """alpha2 is the y^2-coefficient of h(y,0) in the chart equation
    -w^2 + eta*z^2 + z*h(y,z) + nu^2*y^6.  After eliminating t = theta*z it
    is the y^2 z coefficient, which only f3 contributes."""
    f2, f3 = fs[0], fs[1]
    quad_z = f2.coefficient((0, 2, 0))
    quad_zt = f2.coefficient((0, 1, 1))
    quad_t = f2.coefficient((0, 0, 2))
    a = f3.coefficient((2, 1, 0))
    b = f3.coefficient((2, 0, 1))
    degenerate_everywhere = True
    for theta in thetas:
        theta = Fraction(theta)
        eta = quad_z + quad_zt * theta + quad_t * theta * theta
        if eta == 0:
            continue  # q(z, theta z) degenerated; retry with another slope
        degenerate_everywhere = False
        if a + b * theta != 0:
            return True
    if degenerate_everywhere:
        raise DualGraphError(
            "q(z,t) vanishes on every retry slope; germ is not of the "
            "classified shape")
    # alpha2 = a + b*theta vanished on every nondegenerate slope; with the
    # default retry list that forces a = b = 0, i.e. alpha2 is identically
    # zero.  A single caller-chosen slope can be unlucky, though.
    if (a, b) == (Fraction(0), Fraction(0)):
        return False
    raise DualGraphError(
        "the supplied pencil slope is degenerate for the alpha2 test; "
        "retry with a generic slope")


# -- curve configurations -------------------------------------------------------

@dataclass(frozen=True)
class CurvePoint:
    singularity: str
    contact: int
    graph_type: GraphType

    def __post_init__(self):
        if self.graph_type not in admissible_types(self.singularity, self.contact):
            raise DualGraphError(
                f"{self.graph_type} is not an admissible type for "
                f"{self.singularity} with contact {self.contact}")


@dataclass(frozen=True)
class CurveConfig:
    points: tuple[CurvePoint, ...]
    ks_dot_gamma: Fraction = Fraction(0)

    def __init__(self, points: Sequence[CurvePoint], ks_dot_gamma=0):
        points = tuple(points)
        if sum(p.contact for p in points) > 3:
            raise DualGraphError(
                "total contact multiplicity along the curve pair exceeds 3")
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "ks_dot_gamma", Fraction(ks_dot_gamma))


def self_intersection(cfg: CurveConfig) -> Fraction:
    """(Gamma^2) = -2 - K_S.Gamma + sum of correction terms."""
    return (Fraction(-2) - cfg.ks_dot_gamma
            + sum((correction_term(p.graph_type) for p in cfg.points), Fraction(0)))


@dataclass(frozen=True)
class ExclusionReport:
    gamma_squared: Fraction
    gamma_dot_delta: Fraction
    excluded: bool


def exclusion_verdict(cfg: CurveConfig) -> ExclusionReport:
    """Degree-1 curve test: with T|_S . Gamma = 1, the residual intersection
    (Gamma.Delta) = 1 - (Gamma^2) must be at least 1."""
    if cfg.ks_dot_gamma != 0:
        raise DualGraphError("the verdict applies to anticanonical pencils "
                             "with K_S.Gamma = 0")
    g2 = self_intersection(cfg)
    gd = 1 - g2
    return ExclusionReport(g2, gd, gd >= 1)


def enumerate_configs(singularities=("cA1", "cA2")) -> list[CurveConfig]:
    """Every admissible multiset of classified points with total contact at
    most 3."""
    atoms = []
    for s in singularities:
        for m in (1, 2, 3):
            for t in admissible_types(s, m):
                atoms.append(CurvePoint(s, m, t))
    configs = [CurveConfig(())]
    for count in (1, 2, 3):
        for combo in combinations_with_replacement(atoms, count):
            if sum(p.contact for p in combo) <= 3:
                configs.append(CurveConfig(combo))
    return configs


@dataclass(frozen=True)
class WorstCase:
    maximum: Fraction
    attained_by: CurveConfig


def enumerate_worst_case(singularities=("cA1", "cA2")) -> WorstCase:
    """Maximal total correction over all admissible configurations."""
    best = None
    for cfg in enumerate_configs(singularities):
        total = sum((correction_term(p.graph_type) for p in cfg.points),
                    Fraction(0))
        if best is None or total > best[0]:
            best = (total, cfg)
    return WorstCase(best[0], best[1])
