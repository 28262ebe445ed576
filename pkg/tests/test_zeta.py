import random

import pytest

from conftest import model
from ellrank import kernels
from ellrank.algebra import QQ, ExtensionField, PrimeField, parse_poly
from ellrank.errors import CapabilityError
from ellrank.zeta import (
    LPolynomial,
    PointCounter,
    count_points,
    field_tables,
    l_polynomial,
    torsion_upper_over_Q,
    two_torsion_bounds,
    zeta_of,
)


def brute_weierstrass_count(p, b2, b0):
    """Places of degree 1 on ``x^3 + b2 t^2 + b0 = 0`` by a naive double loop.

    The affine curve is smooth (``b0 != 0``) and there is a single totally
    ramified place above infinity.
    """
    affine = sum(1 for x in range(p) for t in range(p) if (x**3 + b2 * t * t + b0) % p == 0)
    return affine + 1


class TestCounts:
    def test_rational_curve(self, F7):
        E = model(F7, "0", "-t")
        assert count_points(E, 1) == 8
        assert count_points(E, 2) == 50

    def test_genus_one_against_brute_force(self, F7):
        E = model(F7, "0", "t^2 + 1")
        assert count_points(E, 1) == brute_weierstrass_count(7, 1, 1) == 4

    @pytest.mark.parametrize("p,b2,b0", [(5, 1, 2), (7, 3, 1), (5, 2, 4), (7, 1, 3)])
    def test_genus_one_family(self, p, b2, b0):
        E = model(PrimeField(p), "0", f"{b2}*t^2 + {b0}")
        assert count_points(E, 1) == brute_weierstrass_count(p, b2, b0)

    def test_parallel_matches_serial(self, F5):
        E = model(F5, "2*t + 1", "t^5 + 3*t + 2")
        pc = PointCounter(E)
        assert pc.count(3, workers=3) == pc.count(3, workers=1)

    def test_work_budget(self, F5, monkeypatch):
        monkeypatch.setenv("ELLRANK_WORK_BUDGET", "100")
        with pytest.raises(CapabilityError, match="ELLRANK_WORK_BUDGET"):
            count_points(model(F5, "0", "t^5 + 1"), 2)

    def test_extension_base_field(self):
        F5 = PrimeField(5)
        L = ExtensionField(F5, parse_poly("w^2 + w + 2", F5, var="w").coeffs, name="w")
        E = model(L, "w*t + 1", "t^3 + (w+1)*t + 2")
        counts, P = zeta_of(E)
        assert P.point_counts(2) == [count_points(E, 1), count_points(E, 2)]


class TestKernels:
    @pytest.mark.parametrize("p,n", [(5, 1), (7, 1), (5, 2), (7, 2), (5, 3)])
    def test_backends_agree(self, p, n):
        compiled = kernels.compiled_tables()
        if compiled is None:
            pytest.skip("compiled kernel not built")
        rng = random.Random(p * 100 + n)
        T_py = field_tables(p, n, kernels.PythonFieldTables)
        T_cy = field_tables(p, n, compiled)
        for _ in range(5):
            A = [rng.randrange(T_py.N1 + 1) for _ in range(rng.randint(0, 4))]
            B = [rng.randrange(T_py.N1 + 1) for _ in range(rng.randint(1, 6))]
            assert T_py.count_range(A, B, 0, T_py.N1, True) == T_cy.count_range(A, B, 0, T_cy.N1, True)

    def test_tables_are_field(self):
        T = field_tables(7, 2, kernels.PythonFieldTables)
        one = T.from_encoded(1)
        assert T.add(one, T.neg(one)) == T.ZERO
        assert T.to_encoded(T.mul(T.from_encoded(7), T.from_encoded(7))) != 0


class TestLPolynomial:
    def test_genus_zero(self):
        assert l_polynomial([], 7, 0).coeffs == (1,)

    def test_genus_one_shape(self):
        a = 3
        P = l_polynomial([7 + 1 - a], 7, 1)
        assert P.coeffs == (1, -a, 7)

    def test_genus_two_newton(self, F5):
        E = model(F5, "4*t^3 + 2*t^2 + 2*t + 2", "4")
        counts, P = zeta_of(E)
        N1, N2 = counts
        a1 = N1 - 6
        a2 = ((N2 - 26) + a1 * a1) // 2
        assert P.coeffs == (1, a1, a2, 5 * a1, 25)
        assert P.point_counts(2) == counts

    def test_weil_bound(self, F5):
        _, P = zeta_of(model(F5, "0", "t^5 + 4*t^3 + 2*t^2 + 2*t + 3"))
        assert all(abs(r - 5**0.5) < 1e-9 for r in P.reciprocal_root_moduli())


class TestTwoTorsion:
    def test_odd_class_number(self):
        b = two_torsion_bounds(LPolynomial((1, -1, 3), 3, 1))
        assert (b.lower, b.upper, b.exact) == (0, 0, True)

    def test_interval(self):
        b = two_torsion_bounds(LPolynomial((1, -2, 5), 5, 1))
        assert (b.lower, b.upper) == (1, 2)

    def test_odd_nine(self):
        b = two_torsion_bounds(LPolynomial((1, 3, 5), 5, 1))
        assert (b.lower, b.upper) == (0, 0)

    def test_tomasz_over_q(self, tomasz):
        b = torsion_upper_over_Q(tomasz, [7, 11, 13])
        assert b.lower == 0 and b.upper == 0 and b.prime == 7

    def test_genus_zero_over_q(self):
        b = torsion_upper_over_Q(model(QQ, "0", "-t"), [7])
        assert (b.lower, b.upper) == (0, 0)
