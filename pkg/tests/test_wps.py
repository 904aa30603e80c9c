import json
from fractions import Fraction

import pytest

from birigid import wps
from birigid.poly import NotFiniteError, parse_poly
from birigid.wps import (CoordinateStratum, FAMILIES_SHA256, WpsError,
                         anticanonical_cube, classify_case, data_digest,
                         generic_member, get_family, index_one_identity,
                         load_families, restrict_descrf,
                         stratum_singular_points, weighted_monomials)


class TestCatalogue:
    def test_counts(self):
        fams = load_families()
        assert len(fams["hyp"]) == 78
        assert len(fams["wci2"]) == 18

    def test_data_hash_matches_manifest(self):
        assert data_digest() == FAMILIES_SHA256

    def test_tampered_default_data_rejected(self, tmp_path, monkeypatch):
        fams = json.loads(wps.DATA_PATH.read_text())
        fams[0]["k3"] = "2"
        bad = tmp_path / "families.json"
        bad.write_text(json.dumps(fams))
        monkeypatch.setattr(wps, "DATA_PATH", bad)
        with pytest.raises(wps.DataIntegrityError):
            load_families()

    def test_every_row_index_one_and_k3(self):
        for fam in wps.all_families():
            assert index_one_identity(fam), fam.id
            assert anticanonical_cube(fam) == fam.k3, fam.id
            assert fam.k3 <= 1, fam.id

    def test_every_hypersurface_case_mark(self):
        for fam in load_families()["hyp"].values():
            assert classify_case(fam) == fam.case, fam.id

    def test_spot_values(self):
        assert anticanonical_cube(get_family(6)) == 1
        assert anticanonical_cube(get_family(95)) == Fraction(1, 330)
        assert anticanonical_cube(get_family(85, "wci2")) == Fraction(1, 180)

    def test_case_examples(self):
        assert classify_case(get_family(15)) == "heart"
        assert classify_case(get_family(11)) == "diamond"
        assert classify_case(get_family(74)) == "club"
        assert classify_case(get_family(41)) == "heart"  # also meets the diamond test
        assert classify_case(get_family(16)) == ""

    def test_case_on_wci_rejected(self):
        with pytest.raises(WpsError):
            classify_case(get_family(8, "wci2"))


class TestGenericMember:
    def test_homogeneous_of_family_degree(self):
        fam = get_family(6)
        f = generic_member(fam, seed=3)
        assert f.is_weighted_homogeneous(fam.weights.weights, 8)

    def test_deterministic_in_seed(self):
        fam = get_family(38)
        assert generic_member(fam, 12) == generic_member(fam, 12)
        assert generic_member(fam, 12) != generic_member(fam, 13)

    def test_family_46_contains_t_cubed(self):
        f = generic_member(get_family(46), seed=0)
        assert f.coefficient((0, 0, 0, 3, 0)) != 0

    def test_wci_pair(self):
        fam = get_family(85, "wci2")
        f1, f2 = generic_member(fam, seed=1)
        assert f1.is_weighted_homogeneous(fam.weights.weights, 24)
        assert f2.is_weighted_homogeneous(fam.weights.weights, 30)

    def test_monomial_enumeration_degenerate(self):
        assert weighted_monomials((1, 1), 2) == [(2, 0), (1, 1), (0, 2)]
        assert weighted_monomials((2, 3), 1) == []


class TestRestrictDescrf:
    def test_family_47_shape(self):
        fam = get_family(47)
        rep = restrict_descrf(47, generic_member(fam, seed=5))
        assert rep.all_satisfied
        # the restriction has exactly the catalogued support
        assert set(rep.restricted.terms) == {(1, 0, 2), (0, 3, 0)}

    def test_family_25_shape(self):
        rep = restrict_descrf(25, generic_member(get_family(25), seed=5))
        assert rep.all_satisfied
        assert set(rep.restricted.terms) == {(0, 2, 1), (1, 3, 0), (5, 0, 0)}

    def test_family_16_missing_monomial_detected(self):
        fam = get_family(16)
        f = generic_member(fam, seed=9)
        # kill the w^2*z coefficient: exponents (0,0,1,0,2) in (x,y,z,t,w)
        from birigid.poly import MPoly
        terms = dict(f.terms)
        del terms[(0, 0, 1, 0, 2)]
        broken = MPoly(5, terms, f.vars)
        rep = restrict_descrf(16, broken)
        assert not rep.all_satisfied
        failed = [name for name, ok in rep.conditions if not ok]
        assert failed == ["z*w^2 nonzero"]

    def test_wrong_family_id(self):
        with pytest.raises(WpsError):
            restrict_descrf(15, generic_member(get_family(15), seed=1))

    def test_degree_mismatch(self):
        with pytest.raises(WpsError):
            restrict_descrf(16, generic_member(get_family(17), seed=1))

    def test_all_seven_families_generic_pass(self):
        for fid in wps.RESTRICT_FAMILY_IDS:
            rep = restrict_descrf(fid, generic_member(get_family(fid), seed=2))
            assert rep.all_satisfied, fid


class TestStratumSingularPoints:
    def test_family_47_stratum_empty(self):
        fam = get_family(47)
        f = generic_member(fam, seed=1)
        res = stratum_singular_points(f, fam.weights, CoordinateStratum([0, 1]))
        assert res.points == ()
        assert not res.may_have_irrational
        # the weight-5 coordinate point is a quotient point of the ambient
        assert len(res.ambient_singular) == 1

    def test_cA3_normal_form_stratum(self):
        V = ["x", "y", "z", "t", "w"]
        f = parse_poly(
            "-w^2 + x^4*t^2 + x^3*t*(y^2 + y*z + z^2 + t^2)"
            " + x^2*(y^4 + z^4 + t^4 + y^2*z^2)"
            " + x*(y^5 + z^5 + t^5 + y*z^4)"
            " + y^6 + z^6 + t^6 + y^2*z^4", V)
        assert f.is_weighted_homogeneous((1, 1, 1, 1, 3), 6)
        res = stratum_singular_points(f, (1, 1, 1, 1, 3),
                                      CoordinateStratum([2, 3, 4]))
        assert res.points == ((1, 0, 0, 0, 0),)
        assert not res.may_have_irrational

    def test_monomial_presence_axis(self):
        # restriction to one coordinate axis checks a single monomial
        fam = get_family(6)
        f = generic_member(fam, seed=4)
        res = stratum_singular_points(f, fam.weights,
                                      CoordinateStratum([0, 1, 2, 3]))
        # w^2 appears (weight 4, degree 8), so the w-axis is not singular
        assert res.points == () and res.ambient_singular == ()

    def test_dimension_guard(self):
        fam = get_family(6)
        f = generic_member(fam, seed=4)
        with pytest.raises(WpsError, match="dimension"):
            stratum_singular_points(f, fam.weights, CoordinateStratum([0]))

    def test_positive_dimensional_detected(self):
        # restricting kills everything but w^2: the z,t line of the stratum
        # is entirely made of candidates
        V = ["x", "y", "z", "t", "w"]
        f = parse_poly("w^2 + x^2*z^4 + y^2*t^4 + x^6 + y^6", V)
        with pytest.raises(NotFiniteError):
            stratum_singular_points(f, (1, 1, 1, 1, 3),
                                    CoordinateStratum([0, 1]))

    def test_inhomogeneous_rejected(self):
        V = ["x", "y", "z"]
        f = parse_poly("x^2 + y", V)
        with pytest.raises(WpsError, match="homogeneous"):
            stratum_singular_points(f, (1, 1, 1), CoordinateStratum([2]))

    def test_rational_torus_point_found(self):
        # restriction to x = 0 is a cube, so (y:z) = (2:1) is singular there
        V = ["x", "y", "z"]
        f = parse_poly("(y - 2*z)*(y - 2*z)*(y - 2*z) + x^3", V)
        res = stratum_singular_points(f, (1, 1, 1), CoordinateStratum([0]))
        assert len(res.points) == 1
        pt = res.points[0]
        assert pt[0] == 0 and pt[2] / pt[1] == Fraction(1, 2)
        assert not res.may_have_irrational

    def test_blank_family_ca1_strata(self):
        # the seven blank families: generic members have no candidate
        # non-quasi-smooth points on x = y = 0 outside ambient Sing
        for fid in wps.RESTRICT_FAMILY_IDS:
            fam = get_family(fid)
            f = generic_member(fam, seed=6)
            res = stratum_singular_points(f, fam.weights,
                                          CoordinateStratum([0, 1]))
            assert res.points == (), fid
            assert not res.may_have_irrational, fid
