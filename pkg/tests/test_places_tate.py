import pytest

from conftest import model, poly
from ellrank.algebra import QQ, PrimeField
from ellrank.places import EllipticSurfaceModel, Place, bad_places, dim_pic_base_torsion, valuation
from ellrank.errors import EllRankError
from ellrank.tate import KodairaType, LocalReductionData, global_summary, local_correction, tate_local


def labels(places):
    return sorted(v.label() for v in places)


class TestPlaces:
    def test_tomasz_bad_places(self, tomasz):
        assert labels(bad_places(tomasz)) == sorted(["t + 1", "t^4 - t^3 + t^2 - t + 1", "inf"])

    def test_x3_plus_t(self):
        assert labels(bad_places(model(QQ, "0", "t"))) == ["inf", "t"]

    def test_x3_plus_t_mod_5(self, F5):
        assert labels(bad_places(model(F5, "0", "t"))) == ["inf", "t"]

    def test_constant_model_has_no_bad_places(self, F5):
        E = model(F5, "1", "1")
        assert E.is_constant and bad_places(E) == []

    def test_valuations(self):
        assert valuation(poly("t^2"), Place(QQ, poly("t"))) == 2
        assert valuation(poly("t^2 + 1"), Place(QQ)) == -2
        assert valuation((poly("t - 1"), poly("(t + 1)^2")), Place(QQ, poly("t + 1"))) == -2

    @pytest.mark.parametrize("p", [2, 3, 5])
    def test_base_torsion(self, p):
        assert dim_pic_base_torsion(p) == 0

    def test_singular_model_rejected(self):
        with pytest.raises(EllRankError):
            model(QQ, "-3*t^2", "2*t^3")


class TestTate:
    def test_tomasz_finite_place(self, tomasz):
        d = tate_local(tomasz, Place(QQ, poly("t + 1")))
        assert (str(d.kodaira), d.f_v, d.c_v) == ("II", 2, 1)

    def test_ii_star(self):
        d = tate_local(model(QQ, "0", "t^5"), Place(QQ, poly("t")))
        assert (str(d.kodaira), d.f_v, d.c_v) == ("II*", 2, 1)

    def test_i1(self):
        d = tate_local(model(QQ, "-3", "t"), Place(QQ, poly("t - 2")))
        assert (str(d.kodaira), d.f_v, d.c_v) == ("I1", 1, 1)

    def test_tomasz_summary(self, tomasz):
        s = global_summary(tomasz)
        assert (s.deg_f, s.chi, s.p_g) == (12, 1, 0)
        assert all(d.c_v == 1 for d in s.sigma)

    def test_x3_plus_t_summary(self):
        s = global_summary(model(QQ, "0", "t"))
        types = {d.place.label(): str(d.kodaira) for d in s.sigma}
        assert types == {"t": "II", "inf": "II*"}
        assert (s.deg_f, s.chi, s.p_g) == (4, 1, 0)

    def test_degree_two_place(self, F7):
        s = global_summary(model(F7, "0", "t^2 + 1"))
        types = {d.place.label(): (str(d.kodaira), d.degree) for d in s.sigma}
        assert types == {"t^2 + 1": ("II", 2), "inf": ("IV*", 1)}
        assert s.deg_f == 6

    def test_tomasz_q7(self, tomasz7):
        s = global_summary(tomasz7)
        assert {d.place.label(): str(d.kodaira) for d in s.sigma}["inf"] == "II*"
        assert (s.deg_f, s.chi, s.p_g) == (16, 2, 1)

    def test_split_multiplicative(self):
        # y^2 = x^3 - 3x + t near t = 2: x = 1 is the node, slope 3 is a square
        d = tate_local(model(QQ, "-3*t", "2*t^2 - 6*t + 6"), Place(QQ, poly("t - 1")))
        assert d.kodaira.family == "I"


def _local(kod, c, c_geom=None):
    K = KodairaType.parse(kod)
    return LocalReductionData(Place(QQ, poly("t")), K, 2 if K.additive else 1, c,
                              c_geom or K.geometric_tamagawa(), K.components(), 0, None, ())


class TestLocalCorrection:
    def test_type_ii(self):
        assert local_correction(_local("II", 1), 2) == 0

    def test_full_i0_star(self):
        assert local_correction(_local("I0*", 4), 2) == 2

    def test_split_i6_at_three(self):
        assert local_correction(_local("I6", 6), 3) == 1

    def test_partial_i0_star(self):
        assert local_correction(_local("I0*", 2), 2) == 1


J0_TYPES = {0: "I0", 1: "II", 2: "IV", 3: "I0*", 4: "IV*", 5: "II*"}
J1728_TYPES = {0: "I0", 1: "III", 2: "I0*", 3: "III*"}


@pytest.mark.parametrize("k", range(1, 12))
def test_j0_classification_oracle(k):
    """``y^2 = x^3 + t^k u``: the type depends only on ``k mod 6``."""
    E = model(PrimeField(7), "0", f"t^{k} * (t + 1)")
    d = tate_local(E, Place(E.base, poly("t", E.base)))
    assert str(d.kodaira) == J0_TYPES[k % 6]


@pytest.mark.parametrize("k", range(1, 8))
def test_j1728_classification_oracle(k):
    E = model(PrimeField(5), f"t^{k} * (t + 2)", "0")
    d = tate_local(E, Place(E.base, poly("t", E.base)))
    assert str(d.kodaira) == J1728_TYPES[k % 4]
