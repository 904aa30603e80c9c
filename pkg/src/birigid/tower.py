"""Blow-up tower graphs and the local inequality engine.

A tower of N point/curve blow-ups is recorded as an oriented graph on
vertices 1..N with edges j -> i for j > i.  The consecutive edges
(i+1) -> i are always present and are kept implicit in the input; only
additional edges are listed.  Two markers K <= L <= N record how many of
the leading blow-ups are at double points (K) and at points at all (L).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .kernels import min_simplex_quadratic


class TowerError(ValueError):
    pass


@dataclass(frozen=True, init=False)
class TowerGraph:
    n: int
    extra_edges: frozenset[tuple[int, int]]
    k: int
    l: int

    def __init__(self, n: int, extra_edges=(), k: int = 1, l: int | None = None):
        if n < 1:
            raise TowerError("need at least one blow-up")
        if l is None:
            l = n
        if not 1 <= k <= l <= n:
            raise TowerError(f"markers must satisfy 1 <= K <= L <= N, got K={k}, L={l}, N={n}")
        edges = set()
        for j, i in extra_edges:
            if not (1 <= i < j <= n):
                raise TowerError(f"edge {j}->{i} must satisfy N >= j > i >= 1")
            if j == i + 1:
                continue  # chain edges are implicit
            edges.add((j, i))
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "extra_edges", frozenset(edges))
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "l", l)

    @classmethod
    def chain(cls, n: int, k: int, l: int | None = None) -> "TowerGraph":
        return cls(n, (), k, l)

    @classmethod
    def from_full_edges(cls, n: int, edges, k: int, l: int | None = None) -> "TowerGraph":
        """Build from an explicit full edge set, validating the chain."""
        edges = set(tuple(e) for e in edges)
        for i in range(1, n):
            if (i + 1, i) not in edges:
                raise TowerError(f"missing chain edge {i + 1}->{i}")
        for j, i in edges:
            if not (1 <= i < j <= n):
                raise TowerError(f"dangling or misdirected edge {j}->{i}")
        return cls(n, edges, k, l)

    def all_edges(self) -> set[tuple[int, int]]:
        out = {(i + 1, i) for i in range(1, self.n)}
        out |= self.extra_edges
        return out

    def in_edges(self, i: int) -> list[int]:
        """Sources j of edges j -> i."""
        return [j for (j, t) in self.all_edges() if t == i]


@dataclass(frozen=True)
class SigmaTriple:
    s0: int
    s1: int
    s2: int

    def __post_init__(self):
        if self.s0 < 1 or self.s1 < 0 or self.s2 < 0:
            raise TowerError("need sigma0 >= 1 and sigma1, sigma2 >= 0")

    @property
    def discrepancy(self) -> int:
        return self.s0 + 2 * self.s1 + self.s2


def path_counts(g: TowerGraph) -> tuple[int, ...]:
    """Number of paths from vertex N to each vertex, p_N = 1."""
    p = [0] * (g.n + 1)
    p[g.n] = 1
    for i in range(g.n - 1, 0, -1):
        p[i] = sum(p[j] for j in g.in_edges(i))
        if p[i] < 1:
            raise TowerError(f"vertex {i} unreachable")  # cannot happen with the chain
    return tuple(p[1:])


def sigmas(g: TowerGraph) -> SigmaTriple:
    """Partition of the path counts by the K/L markers."""
    p = path_counts(g)
    s0 = sum(p[:g.k])
    s1 = sum(p[g.k:g.l])
    s2 = sum(p[g.l:])
    return SigmaTriple(s0, s1, s2)


def min_quadratic(g: TowerGraph, v) -> Fraction:
    """Closed-form minimum of 2*sum_{i<=K} p_i x_i^2 + sum_{i>K} p_i x_i^2
    subject to sum p_i x_i = v: equals 2 v^2 / (Sigma0 + 2(Sigma1+Sigma2))."""
    v = Fraction(v)
    if v < 0:
        raise TowerError("v must be nonnegative")
    s = sigmas(g)
    return 2 * v * v / (s.s0 + 2 * (s.s1 + s.s2))


def min_quadratic_minimizer(g: TowerGraph, v) -> tuple[Fraction, ...]:
    """The minimizing assignment: 2 x_1 = ... = 2 x_K = x_{K+1} = ... = x_N."""
    v = Fraction(v)
    s = sigmas(g)
    tall = 2 * v / (s.s0 + 2 * (s.s1 + s.s2))
    return tuple(tall / 2 if i < g.k else tall for i in range(g.n))


def min_quadratic_oracle(g: TowerGraph, v, resolution: int,
                         backend: str | None = None) -> Fraction:
    """Grid-search lower-bound check of min_quadratic.

    Minimizes the same quadratic over the lattice x_i = c_i / R' on the
    constraint hyperplane, where R' = resolution * denominator(v).  Every
    grid point satisfies the constraint exactly, so the result is always
    >= the closed form, and refining the resolution by an integer factor
    can only shrink the gap.
    """
    if g.n > 6:
        raise TowerError("oracle limited to towers with N <= 6")
    if resolution < 1:
        raise TowerError("resolution must be positive")
    v = Fraction(v)
    if v < 0:
        raise TowerError("v must be nonnegative")
    if v == 0:
        return Fraction(0)
    p = path_counts(g)
    w = [2 if i < g.k else 1 for i in range(g.n)]
    r_eff = resolution * v.denominator
    budget = int(v.numerator) * resolution
    best = min_simplex_quadratic(p, w, budget, backend=backend)
    return Fraction(best, r_eff * r_eff)


def two_n_squared_factor(s: SigmaTriple) -> Fraction:
    """(S0+2S1+S2)^2 / ((S0+S1)(S0+2S1+2S2)); always >= 1."""
    if s.s0 < 1:
        raise TowerError("sigma0 must be at least 1")
    a = s.s0 + 2 * s.s1 + s.s2
    return Fraction(a * a, (s.s0 + s.s1) * (s.s0 + 2 * s.s1 + 2 * s.s2))


def kawakita_factor(s: int, t: int) -> Fraction:
    """Multiplicity factor 2 t^2 / (s (2t - s)) of the weighted
    (s, 2t-s, t, 1) blow-up, cross-checked against the chain tower with
    N = t and K = L = s."""
    if not (0 < s <= t):
        raise TowerError("need 0 < s <= t")
    if gcd(s, t) != 1:
        raise TowerError("s and t must be coprime")
    value = Fraction(2 * t * t, s * (2 * t - s))
    chain = TowerGraph.chain(t, k=s, l=s)
    if 2 * two_n_squared_factor(sigmas(chain)) != value:
        raise TowerError("chain cross-check failed")  # pragma: no cover
    return value


# -- Corti-style inequality bookkeeping -------------------------------------


@dataclass(frozen=True)
class CortiSurface:
    """Per-surface data: pair weight gamma, marker K_j, valuation of the
    surface, and the multiplicity of the cycle part lying on it."""

    gamma: Fraction
    k_j: int
    nu_f: Fraction
    mult_z: Fraction

    def __post_init__(self):
        object.__setattr__(self, "gamma", Fraction(self.gamma))
        object.__setattr__(self, "nu_f", Fraction(self.nu_f))
        object.__setattr__(self, "mult_z", Fraction(self.mult_z))
        if self.gamma < 0:
            raise TowerError("gamma must be nonnegative")
        if self.mult_z < 0:
            raise TowerError("multiplicities must be nonnegative")


@dataclass(frozen=True)
class CortiInstance:
    graph: TowerGraph
    n: Fraction
    mult_zh: Fraction
    surfaces: tuple[CortiSurface, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "n", Fraction(self.n))
        object.__setattr__(self, "mult_zh", Fraction(self.mult_zh))
        object.__setattr__(self, "surfaces", tuple(self.surfaces))
        if self.n <= 0:
            raise TowerError("n must be positive")
        if self.mult_zh < 0:
            raise TowerError("multiplicities must be nonnegative")
        p = path_counts(self.graph)
        for s in self.surfaces:
            if not 0 <= s.k_j <= self.graph.l:
                raise TowerError("surface marker K_j must satisfy 0 <= K_j <= L")
            xi = sum(p[:s.k_j])
            if s.nu_f < xi:
                raise TowerError("surface valuation below its path-count bound")


@dataclass(frozen=True)
class CortiCoefficient:
    t: Fraction
    on_surface: bool  # False encodes "point not on F_j"


def corti_coefficients(inst: CortiInstance) -> tuple[CortiCoefficient, ...]:
    """t_j = Xi_j / (Sigma0 + Sigma1), zero-flagged when K_j = 0."""
    p = path_counts(inst.graph)
    s = sigmas(inst.graph)
    denom = s.s0 + s.s1
    out = []
    for surf in inst.surfaces:
        xi = sum(p[:surf.k_j])
        t = Fraction(xi, denom)
        out.append(CortiCoefficient(t, surf.k_j >= 1))
    return tuple(out)


@dataclass(frozen=True)
class CortiReport:
    t: tuple[CortiCoefficient, ...]
    lhs: Fraction
    rhs: Fraction
    holds: bool
    premise_chain: tuple[bool, ...] | None


def corti_check(inst: CortiInstance,
                m0: Sequence | None = None) -> CortiReport:
    """Evaluate mult Z_h + sum t_j mult Z_j > 2 n^2 + 4 n^2 sum gamma_j t_j.

    With m0 = (m_{0,1}, ..., m_{0,L}) supplied, also checks the three-step
    premise chain bounding sum p_i m_{0,i} between the surface decomposition
    and the discrepancy lower bound.
    """
    coeffs = corti_coefficients(inst)
    n2 = inst.n * inst.n
    lhs = inst.mult_zh + sum(c.t * s.mult_z for c, s in zip(coeffs, inst.surfaces))
    rhs = 2 * n2 + 4 * n2 * sum(c.t * s.gamma for c, s in zip(coeffs, inst.surfaces))
    chain = None
    if m0 is not None:
        m0 = [Fraction(x) for x in m0]
        if len(m0) != inst.graph.l:
            raise TowerError("need one m_{0,i} per point blow-up (L values)")
        if any(x < 0 for x in m0):
            raise TowerError("multiplicities must be nonnegative")
        p = path_counts(inst.graph)
        sg = sigmas(inst.graph)
        weighted = sum(pi * mi for pi, mi in zip(p[:inst.graph.l], m0))
        xi = [sum(p[:s.k_j]) for s in inst.surfaces]
        step1 = ((sg.s0 + sg.s1) * inst.mult_zh
                 + sum(x * s.mult_z for x, s in zip(xi, inst.surfaces))) >= weighted
        nuf_sum = sum(s.gamma * s.nu_f for s in inst.surfaces)
        excess = sg.s2 - nuf_sum
        bound = (2 * n2 * sg.s0 + 4 * n2 * sg.s1 + 4 * n2 * nuf_sum
                 + 2 * n2 * excess * excess / (sg.s0 + 2 * sg.s1 + 2 * sg.s2))
        step2 = weighted > bound
        step3 = bound >= (2 * n2 * (sg.s0 + sg.s1)
                          + 4 * n2 * sum(s.gamma * x for x, s in zip(xi, inst.surfaces)))
        chain = (step1, step2, step3)
    return CortiReport(coeffs, lhs, rhs, lhs > rhs, chain)
