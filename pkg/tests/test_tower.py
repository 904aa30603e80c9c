import random
from fractions import Fraction
from math import gcd

import pytest

from birigid.tower import (CortiInstance, CortiSurface, SigmaTriple,
                           TowerError, TowerGraph, corti_check,
                           corti_coefficients, kawakita_factor,
                           min_quadratic, min_quadratic_minimizer,
                           min_quadratic_oracle, path_counts, sigmas,
                           two_n_squared_factor)


def random_tower(rng: random.Random, max_n: int = 5) -> TowerGraph:
    n = rng.randint(1, max_n)
    extra = [(j, i) for j in range(3, n + 1) for i in range(1, j - 1)
             if rng.random() < 0.5]
    k = rng.randint(1, n)
    l = rng.randint(k, n)
    return TowerGraph(n, extra, k, l)


class TestPathCounts:
    def test_chain(self):
        assert path_counts(TowerGraph.chain(3, 1, 2)) == (1, 1, 1)

    def test_extra_edge(self):
        g = TowerGraph(3, [(3, 1)], 1, 3)
        assert path_counts(g) == (2, 1, 1)

    def test_single_vertex(self):
        assert path_counts(TowerGraph.chain(1, 1, 1)) == (1,)

    def test_from_full_edges_requires_chain(self):
        with pytest.raises(TowerError, match="chain"):
            TowerGraph.from_full_edges(3, [(3, 2)], 1, 3)
        g = TowerGraph.from_full_edges(3, [(3, 2), (2, 1), (3, 1)], 2, 3)
        assert path_counts(g) == (2, 1, 1)

    def test_bad_edges(self):
        with pytest.raises(TowerError):
            TowerGraph(3, [(1, 3)], 1, 3)
        with pytest.raises(TowerError):
            TowerGraph(3, [(4, 1)], 1, 3)

    def test_marker_validation(self):
        with pytest.raises(TowerError):
            TowerGraph(3, [], 2, 1)
        with pytest.raises(TowerError):
            TowerGraph(3, [], 0, 3)

    def test_path_count_dominates_late_sources(self):
        rng = random.Random(2)
        for _ in range(50):
            g = random_tower(rng)
            p = path_counts(g)
            for i in range(1, g.n):
                late = sum(p[j - 1] for j in g.in_edges(i) if j <= g.l)
                assert p[i - 1] >= late


class TestSigmas:
    def test_chain_partition(self):
        s = sigmas(TowerGraph.chain(3, 1, 2))
        assert (s.s0, s.s1, s.s2) == (1, 1, 1)
        assert s.discrepancy == 4

    def test_kawakita_chain(self):
        s = sigmas(TowerGraph.chain(3, 2, 2))
        assert (s.s0, s.s1, s.s2) == (2, 0, 1)
        assert s.discrepancy == 3

    def test_all_double_points(self):
        s = sigmas(TowerGraph.chain(4, 4, 4))
        assert (s.s1, s.s2) == (0, 0)
        assert s.discrepancy == s.s0


class TestMinQuadratic:
    def test_single_blowup(self):
        assert min_quadratic(TowerGraph.chain(1, 1, 1), 1) == 2

    def test_chain_two(self):
        g = TowerGraph.chain(2, 1, 2)
        assert min_quadratic(g, 3) == 6

    def test_zero_value(self):
        g = TowerGraph.chain(4, 2, 3)
        assert min_quadratic(g, 0) == 0

    def test_minimizer_satisfies_constraint_and_value(self):
        rng = random.Random(8)
        for _ in range(30):
            g = random_tower(rng)
            v = Fraction(rng.randint(1, 5), rng.randint(1, 3))
            xs = min_quadratic_minimizer(g, v)
            p = path_counts(g)
            assert sum(pi * x for pi, x in zip(p, xs)) == v
            value = sum((2 if i < g.k else 1) * p[i] * xs[i] * xs[i]
                        for i in range(g.n))
            assert value == min_quadratic(g, v)


class TestMinQuadraticOracle:
    def test_single_blowup_exact(self):
        g = TowerGraph.chain(1, 1, 1)
        for res in (1, 10, 100):
            assert min_quadratic_oracle(g, 1, res) == 2

    def test_chain_two_close(self):
        g = TowerGraph.chain(2, 1, 2)
        got = min_quadratic_oracle(g, 3, 100)
        assert got >= 6
        assert got - 6 <= Fraction(1, 100)

    def test_oracle_never_below_closed_form(self):
        rng = random.Random(4)
        for _ in range(25):
            g = random_tower(rng)
            v = rng.randint(1, 3)
            assert min_quadratic_oracle(g, v, 40) >= min_quadratic(g, v)

    def test_gap_shrinks_with_refining_resolution(self):
        rng = random.Random(44)
        for _ in range(10):
            g = random_tower(rng, max_n=6)
            v = rng.randint(1, 3)
            closed = min_quadratic(g, v)
            gaps = [min_quadratic_oracle(g, v, r) - closed
                    for r in (25, 50, 100, 200)]
            assert all(g2 <= g1 for g1, g2 in zip(gaps, gaps[1:]))
            assert all(g >= 0 for g in gaps)

    def test_rational_value(self):
        g = TowerGraph.chain(2, 1, 2)
        v = Fraction(3, 2)
        assert min_quadratic_oracle(g, v, 50) >= min_quadratic(g, v)

    def test_size_guard(self):
        with pytest.raises(TowerError):
            min_quadratic_oracle(TowerGraph.chain(7, 1, 7), 1, 10)


class TestTwoNSquaredFactor:
    def test_examples(self):
        assert two_n_squared_factor(SigmaTriple(1, 0, 0)) == 1
        assert two_n_squared_factor(SigmaTriple(2, 0, 1)) == Fraction(9, 8)
        assert two_n_squared_factor(SigmaTriple(1, 1, 0)) == Fraction(3, 2)

    def test_sigma0_required(self):
        with pytest.raises(TowerError):
            SigmaTriple(0, 1, 1)

    def test_identity_expansion(self):
        # numerator - denominator = 2 s1^2 + s2^2 + s0 s1 + 2 s1 s2
        for s0 in range(1, 8):
            for s1 in range(0, 8):
                for s2 in range(0, 8):
                    a = s0 + 2 * s1 + s2
                    diff = a * a - (s0 + s1) * (s0 + 2 * s1 + 2 * s2)
                    assert diff == 2 * s1 * s1 + s2 * s2 + s0 * s1 + 2 * s1 * s2


class TestKawakita:
    def test_examples(self):
        assert kawakita_factor(1, 1) == 2
        assert kawakita_factor(2, 3) == Fraction(9, 4)
        assert kawakita_factor(1, 2) == Fraction(8, 3)

    def test_rejects_bad_input(self):
        with pytest.raises(TowerError):
            kawakita_factor(2, 4)
        with pytest.raises(TowerError):
            kawakita_factor(3, 2)
        with pytest.raises(TowerError):
            kawakita_factor(0, 1)


class TestCorti:
    def single_blowup(self, **kw):
        return CortiInstance(TowerGraph.chain(1, 1, 1), **kw)

    def test_coefficient_chain_full(self):
        inst = self.single_blowup(n=1, mult_zh=3,
                                  surfaces=(CortiSurface(1, 1, 1, 0),))
        (c,) = corti_coefficients(inst)
        assert c.t == 1 and c.on_surface

    def test_coefficient_half(self):
        g = TowerGraph.chain(3, 1, 2)
        inst = CortiInstance(g, n=1, mult_zh=0,
                             surfaces=(CortiSurface(1, 1, 1, 0),))
        (c,) = corti_coefficients(inst)
        assert c.t == Fraction(1, 2)

    def test_point_not_on_surface(self):
        inst = self.single_blowup(n=1, mult_zh=1,
                                  surfaces=(CortiSurface(1, 0, 0, 0),))
        (c,) = corti_coefficients(inst)
        assert c.t == 0 and not c.on_surface

    def test_check_no_surfaces(self):
        report = corti_check(self.single_blowup(n=1, mult_zh=3))
        assert report.lhs == 3 and report.rhs == 2 and report.holds

    def test_check_with_surface(self):
        inst = self.single_blowup(
            n=1, mult_zh=1,
            surfaces=(CortiSurface(Fraction(1, 2), 1, 1, 4),))
        report = corti_check(inst)
        assert report.lhs == 5 and report.rhs == 4 and report.holds

    def test_check_fails_on_zero_cycle(self):
        report = corti_check(self.single_blowup(n=1, mult_zh=0))
        assert not report.holds

    def test_marker_validation(self):
        with pytest.raises(TowerError):
            CortiInstance(TowerGraph.chain(2, 1, 1), n=1, mult_zh=0,
                          surfaces=(CortiSurface(1, 2, 5, 0),))

    def test_valuation_bound_validation(self):
        with pytest.raises(TowerError):
            self.single_blowup(n=1, mult_zh=0,
                               surfaces=(CortiSurface(1, 1, 0, 0),))

    def test_premise_chain(self):
        inst = self.single_blowup(n=1, mult_zh=3)
        report = corti_check(inst, m0=[3])
        assert report.premise_chain == (True, True, True)
        with pytest.raises(TowerError):
            corti_check(inst, m0=[1, 2])

    def test_negative_multiplicity_rejected(self):
        with pytest.raises(TowerError):
            self.single_blowup(n=1, mult_zh=-1)
