"""Property tests: invariants that must hold on every input."""

from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from ellrank.algebra import QQ, ExtensionField, Poly, PrimeField, factor_univariate
from ellrank.algebra.local import local_factor_cubic
from ellrank.algebra.residue import (
    residue_cubic_root_count,
    residue_is_square,
    verify_root_certificate,
    verify_square_certificate,
)
from ellrank.bounds import geometric_bound, igusa_equivalence_check, inequality_bound
from ellrank.descent import build_descent_curve, ramification_profile
from ellrank.errors import EllRankError, Undetermined
from ellrank.jacobian import DescentJacobian
from ellrank.places import EllipticSurfaceModel
from ellrank.tate import global_summary
from ellrank.zeta import PointCounter, two_torsion_bounds, zeta_of

SETTINGS = settings(max_examples=40, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])

primes = st.sampled_from([5, 7, 11, 13])


def coeff_lists(p, min_size=1, max_size=7):
    return st.lists(st.integers(0, p - 1), min_size=min_size, max_size=max_size)


@st.composite
def finite_poly(draw, min_deg=0, max_deg=8):
    p = draw(primes)
    K = PrimeField(p)
    cs = draw(coeff_lists(p, min_deg + 1, max_deg + 1))
    f = Poly(K, cs)
    assume(not f.is_zero())
    return f


@st.composite
def surface(draw, fields=(5, 7), rational=False):
    if rational:
        K = QQ
        c = st.integers(-3, 3).map(Fraction)
    else:
        K = PrimeField(draw(st.sampled_from(fields)))
        c = st.integers(0, K.p - 1)
    A = Poly(K, draw(st.lists(c, max_size=5)))
    B = Poly(K, draw(st.lists(c, min_size=1, max_size=7)))
    assume(max(A.degree(), B.degree()) >= 1)
    assume(not (A**3 * 4 + B**2 * 27).is_zero())
    return EllipticSurfaceModel(K, A, B)


def _descent(E):
    try:
        s = global_summary(E)
        return s, build_descent_curve(E, s)
    except EllRankError:
        assume(False)


@SETTINGS
@given(finite_poly())
def test_factorization_round_trip(f):
    facs = factor_univariate(f)
    prod = Poly(f.field, [f.lc()])
    for g, m in facs:
        assert g.is_monic() and g.degree() >= 1
        assert len(factor_univariate(g)) == 1
        prod = prod * g**m
    assert prod == f


@st.composite
def local_cubic(draw):
    p = draw(st.sampled_from([5, 7, 11]))
    K = PrimeField(p)
    c0 = Poly(K, draw(coeff_lists(p, 1, 6)))
    c1 = Poly(K, draw(coeff_lists(p, 0, 6)))
    c2 = Poly(K, draw(coeff_lists(p, 0, 4)))
    assume(not c0.is_zero())
    c = (c0, c1, c2, Poly(K, [1]))
    from ellrank.algebra.local import cubic_discriminant

    assume(not cubic_discriminant(c).is_zero())
    return c


@SETTINGS
@given(local_cubic())
def test_local_degrees_sum_to_three(c):
    loc = local_factor_cubic(c)
    assert sum(e * f for e, f in loc.pairs) == 3


@SETTINGS
@given(local_cubic())
def test_precision_doubling_is_stable(c):
    from ellrank.algebra.local import cubic_discriminant

    base = 2 * cubic_discriminant(c).valuation() + 4
    assert local_factor_cubic(c, base).pairs == local_factor_cubic(c, 2 * base).pairs


@SETTINGS
@given(st.integers(2, 30).filter(lambda d: int(d**0.5) ** 2 != d), st.integers(-20, 20))
def test_square_certificates_reverify(d, a):
    assume(a != 0)
    K = ExtensionField(QQ, [Fraction(-d), Fraction(0), Fraction(1)])
    x = K.from_int(a)
    try:
        cert = residue_is_square(x, K)
    except Undetermined:
        return
    assert verify_square_certificate(x, K, cert)


@SETTINGS
@given(st.lists(st.integers(-9, 9), min_size=3, max_size=3))
def test_root_certificates_reverify(cs):
    f = Poly(QQ, [Fraction(c) for c in cs] + [Fraction(1)])
    assume(f.gcd(f.derivative()).degree() == 0)
    cert = residue_cubic_root_count(f)
    assert cert.value in (0, 1, 3)
    assert verify_root_certificate(f, cert)


@SETTINGS
@given(surface())
def test_identity_over_finite_fields(E):
    s, c = _descent(E)
    assert igusa_equivalence_check(s, c)
    assert inequality_bound(s, 2, 2 * c.genus, geometric=True) == geometric_bound(s)


@settings(max_examples=15, deadline=None, suppress_health_check=list(HealthCheck))
@given(surface(rational=True))
def test_identity_over_rationals(E):
    s, c = _descent(E)
    assert igusa_equivalence_check(s, c)


@SETTINGS
@given(surface())
def test_ramification_two_ways(E):
    s, _ = _descent(E)
    table, newton, _ = ramification_profile(E, s.sigma)
    assert table == newton


@SETTINGS
@given(surface(), st.integers(2, 4))
def test_parallel_counts_match_serial(E, workers):
    pc = PointCounter(E)
    assert pc.count(2, workers) == pc.count(2, 1)


@settings(max_examples=12, deadline=None, suppress_health_check=list(HealthCheck))
@given(surface())
def test_oracle_within_zeta_interval(E):
    s, c = _descent(E)
    assume(1 <= c.genus <= 2)
    J = DescentJacobian(E, c.genus)
    _, P = zeta_of(E, c.genus)
    assert J.class_number() == P.class_number()
    b = two_torsion_bounds(P)
    r = J.two_rank()
    assert b.lower <= r <= b.upper


@SETTINGS
@given(surface(fields=(5, 7, 11)), st.integers(1, 2))
def test_compiled_and_python_kernels_agree(E, i):
    from ellrank import kernels

    compiled = kernels.compiled_tables()
    assume(compiled is not None)
    py = PointCounter(E, kernels.PythonFieldTables)
    cy = PointCounter(E, compiled)
    assert py.affine_counts(i) == cy.affine_counts(i)


@settings(max_examples=25, deadline=None, suppress_health_check=list(HealthCheck))
@given(surface())
def test_l_polynomial_reproduces_counts(E):
    s, c = _descent(E)
    assume(1 <= c.genus <= 3)
    pc = PointCounter(E)
    n = c.genus + 1
    assume(pc.work(n) <= 10**6)
    counts, P = zeta_of(E, c.genus)
    assert P.check()
    assert P.point_counts(n) == [pc.count(i) for i in range(1, n + 1)]


def _poly_text(cs):
    terms = [f"{c}*t^{k}" for k, c in enumerate(cs) if c]
    return " + ".join(terms) or "0"


@settings(max_examples=15, deadline=None, suppress_health_check=list(HealthCheck))
@given(st.lists(st.integers(-3, 3), max_size=4), st.lists(st.integers(-3, 3), min_size=2, max_size=6))
def test_cli_report_round_trip(a, b):
    from ellrank.cli import cmd_analyze, emit, parse_curve_text, parse_report

    text = f"field = rationals\na = {_poly_text(a)}\nb = {_poly_text(b)}\n"
    try:
        ci = parse_curve_text(text)
        doc, _ = cmd_analyze(ci)
    except EllRankError:
        assume(False)
    out = emit(doc)
    assert emit(parse_report(out)) == out
    assert parse_report(out)["input"]["b"] == ci.b
