"""Newton-polygon analysis of cubics over a Laurent series field ``k((s))``.

A cubic is given by its four coefficients ``c_0..c_3`` (``c_3 = 1``), each a
polynomial in ``s`` over the residue field ``k``.  Coefficients are exact,
so no truncation error can creep in; the ``precision`` argument only caps
how deep the shift-and-recurse step may go before giving up.

Residue characteristic is assumed to be at least 5, so every extension is
tame and a segment with slope ``h/e`` (lowest terms) and a simple residual
factor of degree ``d`` gives one place with ``(e, d)``.  For a cubic the
only non-simple case is a repeated linear residual factor on an integral
slope; there we translate ``x`` by the repeated root and look again.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from ..errors import PrecisionError
from .factor import factor_univariate
from .poly import Poly

MAX_DOUBLINGS = 4


@dataclass(frozen=True)
class Branch:
    """One place of ``k((s))[x]/(f)``.

    The roots on this branch satisfy ``x = shift(s) + x'`` where ``x'`` has
    valuation ``h/e`` and ``x'^e / s^h`` reduces to a root of ``phi``.
    ``coeffs`` is the translated cubic (in ``x'``) the branch was read from.
    An ``exact`` branch is a root lying in ``k[s]`` itself (``x' = 0``).
    """

    e: int
    f: int
    h: int
    phi: object
    shift: Poly
    coeffs: tuple
    exact: bool = False


@dataclass(frozen=True)
class LocalFactorization:
    pairs: tuple
    branches: tuple = field(default=(), compare=False, repr=False)

    def degree(self):
        return sum(e * f for e, f in self.pairs)

    def ramification(self):
        """Local degree of the ramification divisor, ``sum (e - 1) f``."""
        return sum((e - 1) * f for e, f in self.pairs)

    def places_of_degree_dividing(self, i):
        """Residue degrees ``f`` of the places that split over a degree-``i`` extension."""
        return [f for _, f in self.pairs if i % f == 0]

    def __iter__(self):
        return iter(self.pairs)


def cubic_discriminant(c):
    c0, c1, c2, c3 = c
    if c3 != Poly(c3.field, [c3.field.one]):
        raise ValueError("cubic must be monic")
    return c2 * c2 * c1 * c1 - c1 * c1 * c1 * 4 - c2 * c2 * c2 * c0 * 4 - c0 * c0 * 27 + c2 * c1 * c0 * 18


def translate(c, a):
    """Coefficients of ``f(x + a)`` for ``a`` a polynomial in ``s``."""
    n = len(c) - 1
    K = c[0].field
    out = []
    powers = [Poly(K, [K.one])]
    for _ in range(n):
        powers.append(powers[-1] * a)
    for i in range(n + 1):
        acc = Poly(K, ())
        for j in range(i, n + 1):
            if not c[j].is_zero():
                acc = acc + c[j] * powers[j - i] * comb(j, i)
        out.append(acc)
    return tuple(out)


def newton_polygon(c):
    """Lower convex hull of ``(i, v(c_i))`` as ``[(i0, v0, i1, v1), ...]``, left to right."""
    pts = [(i, ci.valuation()) for i, ci in enumerate(c) if not ci.is_zero()]
    hull = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point unless it lies strictly below the chord
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return [(a[0], a[1], b[0], b[1]) for a, b in zip(hull, hull[1:])]


def residual_polynomial(c, i0, v0, i1, e, h):
    K = c[0].field
    out = []
    for j in range((i1 - i0) // e + 1):
        ci = c[i0 + j * e]
        out.append(ci.coeff(v0 - j * h))
    return Poly(K, out)


def _analyze(c, h_min, cap, shift, out):
    K = c[0].field
    if len(c) == 1:
        return
    if c[0].is_zero():
        out.append(Branch(1, 1, 0, None, shift, c, exact=True))
        _analyze(c[1:], h_min, cap, shift, out)
        return
    for i0, v0, i1, v1 in newton_polygon(c):
        mu = Fraction(v0 - v1, i1 - i0)
        if mu <= h_min:
            continue
        e, h = mu.denominator, mu.numerator
        if K.characteristic and e % K.characteristic == 0:
            raise ValueError("wild ramification: residue characteristic divides e")
        R = residual_polynomial(c, i0, v0, i1, e, h)
        for phi, m in factor_univariate(R):
            if m == 1:
                out.append(Branch(e, phi.degree(), h, phi, shift, c))
                continue
            if e != 1 or phi.degree() != 1:
                raise AssertionError("non-regular segment outside the cubic case analysis")
            if h > cap:
                raise PrecisionError(f"shift depth {h} exceeds precision {cap}")
            step = Poly.monomial(K, h, K.neg(phi.coeffs[0]))
            _analyze(translate(c, step), h, cap, shift + step, out)


def local_branches(c, precision=None):
    """Branches of a monic separable cubic over ``k((s))``.

    ``precision`` defaults to ``2 v(disc) + 4`` and is doubled on demand a
    few times before :class:`PrecisionError` is raised.
    """
    c = tuple(c)
    if len(c) != 4:
        raise ValueError("expected four coefficients")
    K = c[0].field
    disc = cubic_discriminant(c)
    if disc.is_zero():
        raise ValueError("cubic is not separable")
    cap = precision if precision is not None else 2 * disc.valuation() + 4
    for attempt in range(MAX_DOUBLINGS + 1):
        out = []
        try:
            _analyze(c, Fraction(-1), cap, Poly(K, ()), out)
        except PrecisionError:
            if precision is not None or attempt == MAX_DOUBLINGS:
                raise
            cap *= 2
            continue
        break
    if sum(b.e * b.f for b in out) != 3:
        raise AssertionError("local factorization does not account for degree 3")
    return out


def local_factor_cubic(c, precision=None):
    """``[(e_i, f_i)]`` for the places of the cubic extension of ``k((s))``."""
    branches = local_branches(c, precision)
    pairs = tuple(sorted((b.e, b.f) for b in branches))
    return LocalFactorization(pairs, tuple(branches))
