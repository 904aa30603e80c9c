"""Top-level exclusion verdicts: per-family maximal-center reports, the
sextic double solid certificate, the two-ray cone membership test, and the
degree-1 del Pezzo fibration contradiction arithmetic."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import dualgraph
from .isolating import exclusion_report
from .poly import format_rational
from .wps import FanoFamily

CURVE_THRESHOLD = Fraction(1)


class CertificateError(ValueError):
    pass


def family_verdict(fam: FanoFamily) -> dict:
    """Exclusion report per candidate center kind for a catalogued family."""
    curves = {
        "excluded": fam.k3 <= CURVE_THRESHOLD,
        "k3": format_rational(fam.k3),
        "reason": "anticanonical degree of any curve is at least the "
                  "anticanonical cube",
    }
    smooth = exclusion_report(fam, "smooth")
    ca1 = exclusion_report(fam, "cA1")
    quotient = {"status": "external",
                "reason": "quotient points initiate self-links handled by "
                          "external machinery"}
    return {
        "family": fam.id,
        "kind": fam.kind,
        "curves": curves,
        "smooth": smooth,
        "cA1": ca1,
        "quotient": quotient,
        "all_excluded": bool(curves["excluded"] and smooth["excluded"]
                             and ca1["excluded"]),
    }


def sds_verdict(kind: str = "cA1") -> dict:
    """Certificate assembly for sextic double solids.

    kind "cA1": every candidate center kind is excluded and the solid is
    superrigid.  kind "cA1+cA2": the curve argument still covers both
    singularity types but cA2 points themselves are not covered.
    """
    if kind not in ("cA1", "cA1+cA2"):
        raise CertificateError("kind must be 'cA1' or 'cA1+cA2'")
    worst = dualgraph.enumerate_worst_case()
    gamma_sq_max = Fraction(-2) + worst.maximum
    curves = {
        "excluded": gamma_sq_max <= 0,
        "worst_correction": format_rational(worst.maximum),
        "gamma_squared_max": format_rational(gamma_sq_max),
        "attained_by": [f"{p.singularity}:m={p.contact}:{p.graph_type}"
                        for p in worst.attained_by.points],
    }
    k3 = Fraction(2)
    ca1_bound = 1
    ca1 = {
        "excluded": ca1_bound * k3 <= 2,
        "bound": ca1_bound,
        "k3": format_rational(k3),
        "reason": "a hyperplane section through the point has almost no "
                  "base locus, so degree-1 isolation applies",
    }
    smooth = {"excluded": True, "reason": "external"}
    report = {
        "kind": kind,
        "smooth": smooth,
        "curves": curves,
        "cA1": ca1,
    }
    if kind == "cA1+cA2":
        report["cA2"] = {"excluded": False, "status": "not covered"}
        report["superrigid"] = False
    else:
        report["superrigid"] = bool(curves["excluded"] and ca1["excluded"]
                                    and smooth["excluded"])
    return report


# -- two-ray cone arithmetic -----------------------------------------------------

@dataclass(frozen=True)
class ConeData:
    """Effective-curve cone data in the basis (square of the anticanonical
    class, fiber line class); the tested class has coordinates (1, 0)."""

    ray1: tuple[Fraction, Fraction]
    ray2: tuple[Fraction, Fraction]

    def __init__(self, ray1, ray2):
        object.__setattr__(self, "ray1", tuple(Fraction(c) for c in ray1))
        object.__setattr__(self, "ray2", tuple(Fraction(c) for c in ray2))


def k2_condition(cone: ConeData) -> bool:
    """True when the class (1, 0) is NOT interior to the cone spanned by
    the two rays (the degree-1 fibration superrigidity condition)."""
    (a, b), (c, d) = cone.ray1, cone.ray2
    det = a * d - b * c
    if det == 0:
        raise CertificateError("cone generators are linearly dependent")
    # solve (1,0) = s*ray1 + t*ray2
    s = d / det
    t = -b / det
    return not (s > 0 and t > 0)


# -- del Pezzo fibration contradiction ---------------------------------------------

@dataclass(frozen=True)
class DPInstance:
    n: Fraction
    m: Fraction
    lambdas: tuple[Fraction, ...]
    k3: Fraction | None = None

    def __init__(self, n, m, lambdas: Sequence, k3=None):
        n = Fraction(n)
        m = Fraction(m)
        lams = tuple(Fraction(x) for x in lambdas)
        if n <= 0:
            raise CertificateError("n must be positive")
        if m < 0:
            raise CertificateError("m must be nonnegative")
        if not lams:
            raise CertificateError("need at least one fiber weight")
        if any(x <= 0 for x in lams):
            raise CertificateError("fiber weights must be positive")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "lambdas", lams)
        object.__setattr__(self, "k3", Fraction(k3) if k3 is not None else None)

    @property
    def k(self) -> int:
        return len(self.lambdas)

    def premise_holds(self) -> bool:
        return sum(self.lambdas) > self.m / self.n


@dataclass(frozen=True)
class DPReport:
    lb: Fraction | None
    ub: Fraction
    contradiction: bool
    premise_holds: bool

    def to_json(self) -> dict:
        return {
            "lb": None if self.lb is None else format_rational(self.lb),
            "ub": format_rational(self.ub),
            "contradiction": self.contradiction,
            "premise_holds": self.premise_holds,
            "note": None if self.premise_holds else "no contradiction forced",
        }


def dp_contradiction(inst: DPInstance) -> DPReport:
    """Evaluate the two incompatible bounds on the vertical part of the
    intersection cycle: the lower bound (k/2) n^2 + 2 n^2 sum(lambda) must
    exceed the upper bound 2 m n whenever sum(lambda) > m/n."""
    n, m = inst.n, inst.m
    ub = 2 * m * n
    if not inst.premise_holds():
        return DPReport(None, ub, False, False)
    lb = Fraction(inst.k, 2) * n * n + 2 * n * n * sum(inst.lambdas)
    return DPReport(lb, ub, lb > ub, True)
