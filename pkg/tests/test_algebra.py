from fractions import Fraction

import pytest

from conftest import poly
from ellrank.algebra import QQ, ExtensionField, Poly, PrimeField, factor_univariate, parse_poly
from ellrank.algebra.factor import is_irreducible, primitive_modulus, smallest_irreducible
from ellrank.algebra.local import local_factor_cubic
from ellrank.algebra.residue import (
    residue_cubic_root_count,
    residue_is_square,
    verify_root_certificate,
    verify_square_certificate,
)
from ellrank.errors import ParseError


def cubic_in_u(K, c0, c1, c2=()):
    """``x^3 + c2 x^2 + c1 x + c0`` with coefficients given low-to-high in ``u``."""
    P = lambda cs: Poly(K, [K.coerce(c) for c in cs])
    return (P(c0), P(c1), P(c2), P([1]))


class TestFactor:
    def test_difference_of_squares(self):
        assert factor_univariate(poly("t^2 - 1")) == [(poly("t - 1"), 1), (poly("t + 1"), 1)]

    def test_tomasz_conductor_support(self):
        assert factor_univariate(poly("t^5 + 1")) == [
            (poly("t + 1"), 1),
            (poly("t^4 - t^3 + t^2 - t + 1"), 1),
        ]

    def test_irreducible_mod_7(self, F7):
        f = poly("t^2 + 1", F7)
        assert factor_univariate(f) == [(f, 1)]
        assert {x * x % 7 for x in range(1, 7)} == {1, 2, 4}

    def test_multiplicities(self, F5):
        f = poly("(t + 1)^3 * (t^2 + 2)", F5)
        assert sorted((g.degree(), m) for g, m in factor_univariate(f)) == [(1, 3), (2, 1)]

    def test_number_field(self, Q_sqrt2):
        f = parse_poly("t^2 - 2", Q_sqrt2)
        facs = factor_univariate(f)
        assert [g.degree() for g, _ in facs] == [1, 1]

    def test_smallest_irreducible_is_deterministic(self, F5):
        g = smallest_irreducible(F5, 2)
        assert is_irreducible(g) and g == smallest_irreducible(F5, 2)

    def test_primitive_modulus(self):
        M = primitive_modulus(7, 2)
        assert M.degree() == 2 and is_irreducible(M)


class TestLocalFactorization:
    def test_totally_ramified(self, F7):
        assert local_factor_cubic(cubic_in_u(F7, [0, -1], [])).pairs == ((3, 1),)

    def test_residual_split(self, F7):
        assert local_factor_cubic(cubic_in_u(F7, [0, 1], [1])).pairs == ((1, 1), (1, 2))

    def test_slope_two_thirds(self, F7):
        assert local_factor_cubic(cubic_in_u(F7, [0, 0, -1], [])).pairs == ((3, 1),)

    def test_over_rationals(self):
        # x^3 - u^2 x + u^3: roots u * (roots of y^3 - y + 1), which is irreducible over QQ
        c = cubic_in_u(QQ, [0, 0, 0, 1], [0, 0, -1])
        assert local_factor_cubic(c).pairs == ((1, 3),)


class TestResidue:
    def test_square_in_q(self):
        cert = residue_is_square(Fraction(4), QQ)
        assert cert.value is True and cert.witnesses == (Fraction(2),)

    def test_two_is_square_in_q_sqrt2(self, Q_sqrt2):
        K = Q_sqrt2
        cert = residue_is_square(K.from_int(2), K)
        assert cert.value is True
        w = cert.witnesses[0]
        assert w in (K.gen(), K.neg(K.gen()))
        assert verify_square_certificate(K.from_int(2), K, cert)

    def test_three_is_not_square_in_q_sqrt2(self, Q_sqrt2):
        K = Q_sqrt2
        cert = residue_is_square(K.from_int(3), K)
        assert cert.value is False
        assert cert.prime == 7
        assert verify_square_certificate(K.from_int(3), K, cert)

    def test_cubic_three_roots(self):
        f = poly("x^3 - x", var="x")
        cert = residue_cubic_root_count(f)
        assert cert.value == 3 and verify_root_certificate(f, cert)

    def test_cubic_no_rational_root(self):
        f = poly("x^3 - 2", var="x")
        cert = residue_cubic_root_count(f)
        assert cert.value == 0 and cert.prime == 7
        assert verify_root_certificate(f, cert)
        assert {x**3 % 7 for x in range(7)} == {0, 1, 6}

    def test_cubic_over_f5(self, F5):
        f = poly("x^3 + x + 1", F5, var="x")
        brute = sum(1 for x in range(5) if (x**3 + x + 1) % 5 == 0)
        assert brute == 0
        assert residue_cubic_root_count(f).value == brute


class TestParse:
    def test_integer_grammar(self):
        assert parse_poly("t^5 + 1", QQ) == Poly(QQ, [1, 0, 0, 0, 0, 1])
        assert parse_poly("-3*(t - 1)^2", QQ) == Poly(QQ, [-3, 6, -3])

    def test_extension_coefficients(self, F5):
        M = parse_poly("w^2 + w + 2", F5, var="w")
        L = ExtensionField(F5, M.coeffs, name="w")
        f = parse_poly("(w+1)*t^2 + w", L)
        assert f.degree() == 2 and f.coeff(0) == L.gen()

    def test_error_position(self):
        with pytest.raises(ParseError) as exc:
            parse_poly("t^2 + * 3", QQ, line=4)
        assert exc.value.line == 4 and exc.value.column == 7

    def test_rejects_fractions(self):
        with pytest.raises(ParseError):
            parse_poly("t / 2", QQ)

    def test_field_repr(self):
        K = ExtensionField(QQ, poly("y^2 - 2", var="y").coeffs)
        assert repr(K) == "QQ[y]/(y^2 - 2)"
        assert repr(PrimeField(7)) == "GF(7)"


def test_rational_degree_limit():
    from ellrank.algebra.factor import factor_rational
    from ellrank.errors import CapabilityError

    f = poly("t^5 + 1", QQ)
    assert len(factor_rational(f)) == 2
    with pytest.raises(CapabilityError, match="degree <= 4"):
        factor_rational(f, degree_limit=4)
