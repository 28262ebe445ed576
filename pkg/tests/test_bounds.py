import math
from dataclasses import replace

import pytest

from conftest import model
from ellrank.algebra import QQ
from ellrank.bounds import (
    CHI_COEFFICIENT_3,
    BoundOptions,
    NotApplicable,
    assemble_report,
    bhargava_dim_bound,
    brumer_main_term,
    geometric_bound,
    igusa_equivalence_check,
    inequality_bound,
    lefschetz_bound,
    thm0bound3_part1,
)
from ellrank.descent import build_descent_curve
from ellrank.tate import GlobalReductionSummary, global_summary


def fake_summary(deg_f=12, chi=1, p_g=0):
    return GlobalReductionSummary((), 2, None, deg_f, 12 * chi, chi, p_g)


class TestFormulas:
    @pytest.mark.parametrize("deg_f,expected", [(12, 8), (4, 0), (24, 20)])
    def test_geometric(self, deg_f, expected):
        assert geometric_bound(fake_summary(deg_f)) == expected

    def test_brumer(self):
        assert brumer_main_term(fake_summary(25), 5) == pytest.approx(5.25)
        assert brumer_main_term(fake_summary(5), 5) == pytest.approx(0.5)
        assert brumer_main_term(fake_summary(25), 5, c=0) == brumer_main_term(fake_summary(25), 5)
        with pytest.raises(NotApplicable):
            brumer_main_term(fake_summary(1), 5)

    def test_lefschetz(self, tomasz, tomasz7):
        assert lefschetz_bound(global_summary(tomasz)) == (8, 8)
        assert lefschetz_bound(global_summary(tomasz7))[0] == 10
        assert lefschetz_bound(fake_summary(chi=1))[1] == 8
        with pytest.raises(NotApplicable):
            lefschetz_bound(fake_summary(), characteristic=5)

    def test_bhargava(self):
        b = bhargava_dim_bound(4, 3)
        assert f"{b.real:.3f}" == "6.919" and b.dim == 6
        assert bhargava_dim_bound(0, 3).real == 0
        assert bhargava_dim_bound(1, 3).real == 2 and bhargava_dim_bound(1, 3).dim == 2

    def test_good_reduction_at_3(self):
        assert f"{CHI_COEFFICIENT_3:.6f}" == "9.509775"
        v = thm0bound3_part1(fake_summary(chi=1), 0, True)
        assert math.floor(v) == 6 and v == pytest.approx(6.924812503605781)
        assert math.floor(thm0bound3_part1(fake_summary(chi=1), 2, True)) == 5
        assert math.floor(thm0bound3_part1(fake_summary(chi=2), 0, True)) == 16
        with pytest.raises(NotApplicable):
            thm0bound3_part1(fake_summary(), 0, False)

    def test_inequality_tomasz(self, tomasz):
        s = global_summary(tomasz)
        assert inequality_bound(s, 2, 0) == 0

    def test_inequality_p3(self):
        class S:
            def count_p_divides_c(self, p):
                return 2

        assert inequality_bound(S(), 3, 5) == 7

    def test_inequality_needs_certificate(self, tomasz):
        with pytest.raises(NotApplicable):
            inequality_bound(global_summary(tomasz), 2, 0, certificate=False)


class TestIdentity:
    @pytest.mark.parametrize("b,K", [("-t", QQ), ("t^5 + 1", QQ)])
    def test_identity(self, b, K):
        E = model(K, "0", b)
        s = global_summary(E)
        assert igusa_equivalence_check(s, build_descent_curve(E, s))

    def test_identity_genus_one(self, F7):
        E = model(F7, "0", "t^2 + 1")
        s = global_summary(E)
        c = build_descent_curve(E, s)
        assert 2 * c.genus + s.eps_sum_geom == s.deg_f - 4 == 2
        assert igusa_equivalence_check(s, c)

    def test_identity_failure_is_an_error(self, F7):
        from ellrank.errors import ConsistencyError

        E = model(F7, "0", "t^2 + 1")
        s = global_summary(E)
        c = build_descent_curve(E, s)
        with pytest.raises(ConsistencyError):
            igusa_equivalence_check(s, replace(c, genus=c.genus + 1))

    def test_geometric_inequality_equals_geometric_bound(self, F7):
        E = model(F7, "4", "t^3 + 2*t + 1")
        s = global_summary(E)
        c = build_descent_curve(E, s)
        assert inequality_bound(s, 2, 2 * c.genus, geometric=True) == geometric_bound(s)


class TestReport:
    def test_tomasz_asserted(self, tomasz):
        assert assemble_report(tomasz, BoundOptions(torsion_dim=0)).best_bound == 0

    def test_tomasz_geometric(self, tomasz):
        assert assemble_report(tomasz, BoundOptions(geometric=True)).best_bound == 8

    def test_x3_plus_t(self):
        r = assemble_report(model(QQ, "0", "t"))
        assert r.entry("geometric").value == 0 and r.best_bound == 0

    def test_monotone_in_inputs(self, tomasz):
        plain = assemble_report(tomasz).best_bound
        primes = assemble_report(tomasz, BoundOptions(good_primes=(7,))).best_bound
        both = assemble_report(tomasz, BoundOptions(good_primes=(7,), good_reduction_at_3=True))
        assert plain >= primes >= both.best_bound

    def test_negative_flagged(self):
        r = assemble_report(model(QQ, "0", "t"), BoundOptions(good_reduction_at_3=True))
        e = r.entry("good_reduction_at_3")
        assert e.value is not None
        assert all(x.effective is None or x.effective >= 0 for x in r.entries)

    def test_reducible_two_torsion_note(self):
        r = assemble_report(model(QQ, "0", "-t^3"))
        assert r.hypothesis_violated and r.descent is None
        assert any("6 chi" in n for n in r.notes)
        assert not r.entry("inequality").applicable

    def test_finite_field_uses_zeta(self, F7):
        r = assemble_report(model(F7, "0", "t^2 + 1"))
        assert r.torsion.upper == 2 and r.torsion.lower == 1
        assert r.entry("brumer").applicable
        assert not r.entry("lefschetz").applicable

    def test_p3_needs_assertion(self, tomasz):
        r = assemble_report(tomasz, BoundOptions(p=3))
        assert not r.entry("inequality").applicable
        r = assemble_report(tomasz, BoundOptions(p=3, torsion_dim=1))
        assert r.entry("inequality").value == 1
