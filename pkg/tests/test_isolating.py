from fractions import Fraction

import pytest

from birigid import wps
from birigid.isolating import (CA1_THRESHOLD, FINITE_LIKELY, IsolatingError,
                               IsolationScenario, POSITIVE_DIMENSIONAL,
                               degree_bound, empty_system_report,
                               exclusion_report, exclusion_verdict,
                               finiteness_oracle, isolating_polynomials,
                               recipe_bound)
from birigid.poly import MPoly, parse_poly
from birigid.wps import WeightSystem, get_family


class TestDegreeBound:
    def test_family_38_chart_bound(self):
        ws = WeightSystem((1, 2, 3, 5, 8))
        s = IsolationScenario(ws, 1, "2-a", chart=2)
        assert degree_bound(s) == 24  # lcm of the chart weight 3 with 8

    def test_family_11_drop_top_weight(self):
        ws = WeightSystem((1, 1, 2, 2, 5))
        s = IsolationScenario(ws, 1, "1-b", dropped=(4,))
        assert degree_bound(s) == 2

    def test_all_weights_one(self):
        ws = WeightSystem((1, 1, 1, 1))
        for variant, extra in (("1-a", {}), ("2-a", {"chart": 0})):
            assert degree_bound(IsolationScenario(ws, 1, variant, **extra)) == 1

    def test_variant_validation(self):
        ws = WeightSystem((1, 1, 2))
        with pytest.raises(IsolatingError):
            IsolationScenario(ws, 1, "1-c", dropped=(0, 1))  # needs codim 2
        with pytest.raises(IsolatingError):
            IsolationScenario(ws, 1, "2-a")  # missing chart
        with pytest.raises(IsolatingError):
            IsolationScenario(ws, 2, "2-b", chart=1, dropped=(1,))


class TestRecipeInvariants:
    def test_marked_families_reach_the_cA1_threshold(self):
        for fam in wps.load_families()["hyp"].values():
            if fam.case:
                bound = recipe_bound(fam, fam.ca1_recipe)
                assert bound * fam.k3 <= 2, fam.id

    def test_blank_families_smooth_bound(self):
        for fid in (16, 17, 31, 36, 38, 46, 47):
            fam = get_family(fid)
            bound = recipe_bound(fam, fam.smooth_recipe)
            assert bound * fam.k3 <= 4, fid
        fam25 = get_family(25)
        assert recipe_bound(fam25, fam25.smooth_recipe) * fam25.k3 <= 4
        assert "deferred_stratum" in fam25.smooth_recipe

    def test_blank_families_ca1_bound_is_table_value(self):
        # for the seven catalogued restriction families the chart bound is
        # the top weight, and it clears 2/k3
        for fid in (16, 17, 25, 31, 36, 46, 47):
            fam = get_family(fid)
            bound = recipe_bound(fam, fam.ca1_recipe)
            assert bound == fam.weights[4], fid
            assert bound * fam.k3 <= 2, fid

    def test_family_38_ca1_bound(self):
        fam = get_family(38)
        assert recipe_bound(fam, fam.ca1_recipe) == 24
        assert Fraction(24) <= 2 / fam.k3  # 24 <= 80/3

    def test_all_wci_families(self):
        for fam in wps.load_families()["wci2"].values():
            bound = recipe_bound(fam, fam.ca1_recipe)
            assert bound * fam.k3 <= 2, fam.id


class TestIsolatingPolynomials:
    def test_projective_space_lines(self):
        out = isolating_polynomials((1, 1, 1, 1), (1, 2, 3, 4), chart=0)
        assert out.degree_bound == 1
        expected = {"x1 - 2*x0", "x2 - 3*x0", "x3 - 4*x0"}
        rendered = {str(p) for p in out.polynomials}
        assert rendered == expected

    def test_weighted_binomial(self):
        out = isolating_polynomials((1, 2), (1, 5), chart=0)
        assert out.degree_bound == 2
        (p,) = out.polynomials
        assert p == parse_poly("x1 - 5*x0^2", ["x0", "x1"])

    def test_vanishing_and_homogeneity(self):
        ws = (1, 2, 3, 5, 8)
        pt = (1, 3, Fraction(-2), Fraction(1, 2), 7)
        out = isolating_polynomials(ws, pt, chart=0)
        for p in out.polynomials:
            assert p.eval(pt) == 0
            assert p.is_weighted_homogeneous(ws)

    def test_nonunit_chart_vanishing(self):
        ws = (1, 2, 3, 5, 8)
        pt = (2, 3, 5, 7, 11)
        out = isolating_polynomials(ws, pt, chart=2, dropped=(4,))
        assert len(out.polynomials) == 3
        for p in out.polynomials:
            assert p.eval(pt) == 0

    def test_zero_chart_rejected(self):
        with pytest.raises(IsolatingError):
            isolating_polynomials((1, 1), (0, 1), chart=0)


class TestFinitenessOracle:
    def lines(self):
        V = ["x0", "x1", "x2", "x3"]
        return [parse_poly(s, V) for s in
                ("x1 - 2*x0", "x2 - 3*x0", "x3 - 4*x0")]

    def test_point_system_finite(self):
        rep = finiteness_oracle(self.lines(), 7)
        assert rep.verdict == FINITE_LIKELY
        assert rep.solutions == 6  # one projective point: q-1 cone points

    def test_empty_system_positive_dimensional(self):
        rep = empty_system_report(4, 7)
        assert rep.verdict == POSITIVE_DIMENSIONAL
        assert rep.solutions == 7 ** 4 - 1

    def test_plane_is_positive_dimensional(self):
        V = ["x0", "x1", "x2", "x3"]
        rep = finiteness_oracle([parse_poly("x0", V)], 7)
        assert rep.verdict == POSITIVE_DIMENSIONAL

    def test_family6_member_with_isolating_set(self):
        fam = get_family(6)
        f = wps.generic_member(fam, seed=1)
        q = 7
        # deterministic search for a smooth F_q point with nonzero first
        # coordinate on the member
        point = None
        for x1 in range(q):
            for x2 in range(q):
                for x3 in range(q):
                    for x4 in range(q):
                        cand = (1, x1, x2, x3, x4)
                        if f.eval(cand) % q != 0:
                            continue
                        grads = [f.partial(v).eval(cand) % q for v in range(5)]
                        if any(grads):
                            point = cand
                            break
                    if point:
                        break
                if point:
                    break
            if point:
                break
        assert point is not None
        iso = isolating_polynomials(fam.weights, point, chart=0)
        rep = finiteness_oracle([f, *iso.polynomials], q)
        assert rep.verdict == FINITE_LIKELY

    def test_constraint_masks(self):
        V = ["x0", "x1"]
        rep = finiteness_oracle([parse_poly("x0*x1", V)], 5,
                                nonzero_vars=(0,))
        # x0 nonzero forces x1 = 0: 4 solutions, no origin subtraction
        assert rep.solutions == 4

    def test_bad_prime(self):
        with pytest.raises(IsolatingError):
            finiteness_oracle(self.lines(), 9)

    def test_denominator_clash(self):
        V = ["x0", "x1"]
        p = MPoly(2, {(1, 0): Fraction(1, 7)}, V)
        with pytest.raises(IsolatingError):
            finiteness_oracle([p], 7)


class TestExclusionVerdict:
    def test_examples(self):
        assert exclusion_verdict(24, Fraction(1, 24), "cA1")
        assert exclusion_verdict(1, Fraction(2), "cA1")
        assert not exclusion_verdict(5, Fraction(1), "smooth")

    def test_report_shape(self):
        rep = exclusion_report(get_family(57), "cA1")
        assert rep == {
            "family": 57, "kind": "hyp", "point_kind": "cA1",
            "bound": 60, "threshold": "2", "k3": "1/30", "excluded": True,
        }

    def test_family_25_deferral(self):
        rep = exclusion_report(get_family(25), "smooth")
        assert rep["excluded"]
        assert rep["deferred_stratum"] == "x = y = z = 0"
