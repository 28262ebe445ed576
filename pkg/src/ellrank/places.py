"""Places of k(t), the Weierstrass model, and divisor bookkeeping.

The base is always the projective line.  A finite place is a monic
irreducible ``pi(t)``; its residue field is ``k[y]/(pi(y))`` with ``y`` the
image of ``t`` (or ``k`` itself when ``pi`` is linear).  Local models use the
uniformizer ``s = t - theta`` over the residue field, which keeps every
local coefficient an exact polynomial in ``s``.  The infinite place uses
``s = 1/t`` and the weighted rescaling ``x = X / s^(2n)``.
"""

from __future__ import annotations

import math
from collections import Counter
from functools import cached_property

from .algebra.factor import factor_univariate
from .algebra.fields import ExtensionField
from .algebra.poly import Poly
from .errors import EllRankError

INFINITY_LABEL = "inf"


class Place:
    """A closed point of the projective line over ``k``."""

    def __init__(self, base, pi=None):
        self.base = base
        self.pi = None if pi is None else pi.monic()
        if self.pi is not None and self.pi.degree() < 1:
            raise ValueError("a finite place needs a nonconstant polynomial")

    @property
    def is_infinite(self):
        return self.pi is None

    @property
    def degree(self):
        return 1 if self.pi is None else self.pi.degree()

    @cached_property
    def residue_field(self):
        if self.pi is None or self.pi.degree() == 1:
            return self.base
        return ExtensionField(self.base, self.pi.coeffs, name="y")

    @cached_property
    def theta(self):
        """Image of ``t`` in the residue field (finite places only)."""
        if self.pi is None:
            raise ValueError("the infinite place has no theta")
        if self.pi.degree() == 1:
            return self.base.neg(self.pi.coeffs[0])
        return self.residue_field.gen()

    def lift(self, c):
        """Embed a base-field element into the residue field."""
        if self.residue_field is self.base:
            return c
        return self.residue_field.embed(c)

    def label(self):
        return INFINITY_LABEL if self.pi is None else self.pi.format("t")

    def sort_key(self):
        if self.pi is None:
            return (1, 0, ())
        return (0, self.pi.degree(), self.pi.key())

    def __eq__(self, other):
        return isinstance(other, Place) and self.pi == other.pi and self.base == other.base

    def __hash__(self):
        return hash(("place", self.pi))

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __repr__(self):
        return f"Place({self.label()})"


def valuation(f, v):
    """Valuation of ``f`` at ``v``; ``f`` is a Poly or a ``(num, den)`` pair.

    Returns ``math.inf`` for ``f = 0``.
    """
    num, den = (f, None) if isinstance(f, Poly) else f
    if num.is_zero():
        return math.inf
    val = _poly_valuation(num, v)
    if den is not None:
        if den.is_zero():
            raise ZeroDivisionError("denominator is zero")
        val -= _poly_valuation(den, v)
    return val


def _poly_valuation(f, v):
    if v.is_infinite:
        return -f.degree()
    n = 0
    while True:
        q, r = divmod(f, v.pi)
        if not r.is_zero():
            return n
        f, n = q, n + 1


def dim_pic_base_torsion(p):
    """``dim Pic(P^1)[p]``; the Picard group of the line is Z, so always 0."""
    return 0


class PlaceDivisor:
    """Finitely supported map from places to integers."""

    def __init__(self, items=None):
        self._m = Counter()
        for v, n in dict(items or {}).items():
            if n:
                self._m[v] += n

    def __getitem__(self, v):
        return self._m.get(v, 0)

    def items(self):
        return sorted(self._m.items(), key=lambda vn: vn[0].sort_key())

    def degree(self):
        return sum(n * v.degree for v, n in self._m.items())

    def support(self):
        return [v for v, _ in self.items()]

    def __add__(self, other):
        out = PlaceDivisor(self._m)
        for v, n in other._m.items():
            out._m[v] += n
        return PlaceDivisor({v: n for v, n in out._m.items() if n})

    def __eq__(self, other):
        return isinstance(other, PlaceDivisor) and +self._m == +other._m

    def __repr__(self):
        return "PlaceDivisor(" + ", ".join(f"{n}*{v.label()}" for v, n in self.items()) + ")"


def _ceil_div(a, b):
    return -(-a // b)


class EllipticSurfaceModel:
    """``y^2 = x^3 + A(t) x + B(t)`` over ``k(t)`` with char k not 2 or 3."""

    def __init__(self, base, A, B):
        if base.characteristic in (2, 3):
            raise EllRankError("characteristic 2 and 3 are not supported")
        self.base = base
        self.A = A if isinstance(A, Poly) else Poly(base, [base.coerce(A)])
        self.B = B if isinstance(B, Poly) else Poly(base, [base.coerce(B)])
        if self.disc_core.is_zero():
            raise EllRankError("singular model: 4A^3 + 27B^2 = 0")

    @cached_property
    def disc_core(self):
        """``4A^3 + 27B^2``; the discriminant is ``-16`` times this."""
        return self.A**3 * 4 + self.B**2 * 27

    @cached_property
    def discriminant(self):
        return self.disc_core * (-16)

    def is_constant(self):
        return self.A.degree() <= 0 and self.B.degree() <= 0

    def has_constant_j(self):
        # j is constant iff A^3 / (4A^3 + 27B^2) is
        if self.A.is_zero() or self.B.is_zero():
            return True
        D = self.disc_core
        lhs, rhs = self.A**3, D
        # A^3 = c D for a constant c
        q, r = divmod(lhs, rhs)
        return r.is_zero() and q.degree() <= 0

    @cached_property
    def infinity_weight(self):
        """Smallest ``n`` with ``s^(4n) A(1/s)`` and ``s^(6n) B(1/s)`` polynomial."""
        n = 0
        if not self.A.is_zero():
            n = max(n, _ceil_div(self.A.degree(), 4))
        if not self.B.is_zero():
            n = max(n, _ceil_div(self.B.degree(), 6))
        return n

    def local_model(self, v):
        """``(A_v(s), B_v(s))`` over the residue field of ``v``."""
        if v.is_infinite:
            n = self.infinity_weight
            K = self.base
            A = self.A.reverse(4 * n) if not self.A.is_zero() else Poly(K, ())
            B = self.B.reverse(6 * n) if not self.B.is_zero() else Poly(K, ())
            return A, B
        kv = v.residue_field
        A = self.A.map_coeffs(v.lift, kv).taylor_shift(v.theta)
        B = self.B.map_coeffs(v.lift, kv).taylor_shift(v.theta)
        return A, B

    def discriminant_valuation(self, v):
        """Valuation of ``4A^3 + 27B^2`` in the local model (not yet minimal)."""
        A, B = self.local_model(v)
        return (A**3 * 4 + B**2 * 27).valuation()

    def minimal_discriminant_valuation(self, v):
        A, B = self.local_model(v)
        vd = (A**3 * 4 + B**2 * 27).valuation()
        ks = []
        if not A.is_zero():
            ks.append(A.valuation() // 4)
        if not B.is_zero():
            ks.append(B.valuation() // 6)
        return vd - 12 * min(ks)

    def finite_discriminant_places(self):
        """Places dividing ``4A^3 + 27B^2`` (model discriminant, not minimal)."""
        D = self.disc_core
        if D.degree() < 1:
            return []
        return sorted(Place(self.base, g) for g, _ in factor_univariate(D))

    def __repr__(self):
        return f"EllipticSurfaceModel(A={self.A.format()}, B={self.B.format()} over {self.base!r})"


def bad_places(E):
    """Places where the minimal model has positive discriminant valuation."""
    out = [v for v in E.finite_discriminant_places() if E.minimal_discriminant_valuation(v) > 0]
    inf = Place(E.base)
    if E.minimal_discriminant_valuation(inf) > 0:
        out.append(inf)
    return out
