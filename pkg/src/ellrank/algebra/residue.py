"""Certified square and root tests in residue fields.

Over a finite field the answer is exact.  Over the rationals or a number
field ``QQ[y]/(pi)`` a positive answer always comes with explicit witnesses
(a square root, or the roots themselves), and a negative answer with a
prime ``l`` and an irreducible factor ``phi`` of ``pi mod l`` at whose
residue field the reduced question already has the claimed answer.  The
reduction argument: a root or square root over K reduces to one over every
residue field above a prime where everything is integral.

Factorization over a number field uses Trager's norm method: shift until
the norm is squarefree, factor the norm over QQ, pull back by gcds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from ..errors import ConsistencyError, Undetermined
from .factor import factor_finite, factor_rational, roots_finite, squarefree_decomposition
from .fields import QQ, ExtensionField, PrimeField, RationalField
from .poly import Poly

PRIME_BUDGET = 25


@dataclass(frozen=True)
class Certificate:
    """Evidence for a residue-field answer.

    ``value`` is the answer (bool for squares, int for root counts),
    ``witnesses`` the explicit elements backing a positive answer, and
    ``prime``/``prime_factor`` the residue field used for a negative one.
    """

    value: object
    witnesses: tuple = ()
    prime: int | None = None
    prime_factor: tuple | None = None
    method: str = ""

    def describe(self):
        if self.prime is None:
            return self.method
        if self.prime_factor is None:
            return f"{self.method} at l={self.prime}"
        return f"{self.method} at l={self.prime}, factor {list(self.prime_factor)}"


def _is_number_field(K):
    return isinstance(K, ExtensionField) and isinstance(K.base, RationalField)


def _primes_from(start):
    from sympy import nextprime

    p = nextprime(start - 1)
    while True:
        yield int(p)
        p = nextprime(p)


class _BadReduction(Exception):
    pass


def _reduce_fraction(c, F):
    if c.denominator % F.p == 0:
        raise _BadReduction
    return F.coerce(c)


class ResidueReduction:
    """The residue field of K at a prime ``(l, phi)`` and the reduction map."""

    def __init__(self, K, ell, phi):
        self.K = K
        self.ell = ell
        self.phi = phi
        F = PrimeField(ell)
        self.prime_field = F
        if phi is None or phi.degree() == 1:
            self.field = F
        else:
            self.field = ExtensionField(F, phi.coeffs, name="y")

    def __call__(self, a):
        F = self.prime_field
        if self.phi is None:
            return _reduce_fraction(Fraction(a), F)
        coeffs = [_reduce_fraction(c, F) for c in a]
        if self.phi.degree() == 1:
            return Poly(F, coeffs)(F.neg(self.phi.coeffs[0]))
        rem = Poly(F, coeffs) % self.phi
        return self.field.coerce(tuple(rem.coeffs) + (0,) * (self.phi.degree() - len(rem.coeffs)))

    def poly(self, f):
        return Poly(self.field, [self(c) for c in f.coeffs])

    def key(self):
        return None if self.phi is None else tuple(self.phi.coeffs)


def reductions_at(K, ell):
    """All residue fields of K above ``ell``, or ``[]`` if ``ell`` is bad for K."""
    if isinstance(K, RationalField):
        return [ResidueReduction(K, ell, None)]
    F = PrimeField(ell)
    try:
        pi = Poly(F, [_reduce_fraction(c, F) for c in K.modulus])
    except _BadReduction:
        return []
    if pi.degree() != K.n or pi.gcd(pi.derivative()).degree() > 0:
        return []
    return [ResidueReduction(K, ell, phi) for phi, _ in factor_finite(pi)]


def reduction_from_certificate(K, cert):
    F = PrimeField(cert.prime)
    phi = None if cert.prime_factor is None else Poly(F, cert.prime_factor)
    return ResidueReduction(K, cert.prime, phi)


# --- squares -------------------------------------------------------------

def _rational_sqrt(a):
    a = Fraction(a)
    if a < 0:
        return None
    n, d = isqrt(a.numerator), isqrt(a.denominator)
    if n * n == a.numerator and d * d == a.denominator:
        return Fraction(n, d)
    return None


def residue_is_square(a, K, budget=PRIME_BUDGET):
    """Decide whether ``a`` is a square in ``K``, with a certificate."""
    if K.is_zero(a):
        raise ValueError("residue_is_square needs a nonzero element")
    if K.is_finite:
        if K.is_square(a):
            x2 = Poly(K, [K.neg(a), K.zero, K.one])
            return Certificate(True, (roots_finite(x2)[0],), method="root in finite field")
        return Certificate(False, method="Euler criterion")
    if isinstance(K, RationalField):
        root = _rational_sqrt(a)
        if root is not None:
            return Certificate(True, (root,), method="integer square roots")
    else:
        x2 = Poly(K, [K.neg(a), K.zero, K.one])
        lin = [g for g, _ in factor_number_field(x2) if g.degree() == 1]
        if lin:
            return Certificate(True, (K.neg(lin[0].coeffs[0]),), method="norm factorization")
    return _nonsquare_certificate(a, K, budget)


def _nonsquare_certificate(a, K, budget):
    tried = []
    for ell in _primes_from(5):
        if len(tried) >= budget:
            break
        reds = reductions_at(K, ell)
        if not reds:
            continue
        try:
            images = [(red, red(a)) for red in reds]
        except _BadReduction:
            continue
        tried.append(ell)
        for red, b in images:
            if not red.field.is_zero(b) and not red.field.is_square(b):
                return Certificate(False, prime=ell, prime_factor=red.key(), method="non-residue")
    raise Undetermined(f"square test undecided after primes {tried}")


def verify_square_certificate(a, K, cert):
    """Independently re-check a certificate from :func:`residue_is_square`."""
    if cert.value:
        (w,) = cert.witnesses
        return K.mul(w, w) == K.coerce(a)
    if K.is_finite:
        return not K.is_square(a)
    red = reduction_from_certificate(K, cert)
    b = red(a)
    return not red.field.is_zero(b) and not red.field.is_square(b)


# --- cubic roots -----------------------------------------------------------

def residue_roots(f):
    """Distinct roots of ``f`` in its coefficient field (finite, QQ or number field)."""
    K = f.field
    if K.is_finite:
        return roots_finite(f)
    if isinstance(K, RationalField):
        return sorted(-g.coeffs[0] for g, _ in factor_rational(f) if g.degree() == 1)
    return sorted(K.neg(g.coeffs[0]) for g, _ in factor_number_field(f) if g.degree() == 1)


def residue_cubic_root_count(f, K=None, budget=PRIME_BUDGET):
    """Number of distinct roots of a separable cubic ``f`` in ``K`` (0, 1 or 3)."""
    K = f.field if K is None else K
    if f.degree() != 3:
        raise ValueError("residue_cubic_root_count needs a cubic")
    if f.gcd(f.derivative()).degree() > 0:
        raise ValueError("cubic is not separable")
    roots = residue_roots(f)
    count = len(roots)
    if count == 2:
        raise ConsistencyError("a separable cubic cannot have exactly two roots")
    if K.is_finite:
        return Certificate(count, tuple(roots), method="finite-field root finding")
    if count == 3:
        return Certificate(3, tuple(roots), method="explicit roots")
    f = f.monic()
    tried = []
    for ell in _primes_from(5):
        if len(tried) >= budget:
            break
        reds = reductions_at(K, ell)
        if not reds:
            continue
        try:
            images = [(red, red.poly(f)) for red in reds]
        except _BadReduction:
            continue
        tried.append(ell)
        for red, fb in images:
            if fb.degree() == 3 and fb.gcd(fb.derivative()).degree() == 0:
                if len(roots_finite(fb)) == count:
                    return Certificate(
                        count, tuple(roots), ell, red.key(), method="root count in residue field"
                    )
    raise Undetermined(f"cubic root count undecided after primes {tried}")


def verify_root_certificate(f, cert):
    K = f.field
    if any(not K.is_zero(f(r)) for r in cert.witnesses):
        return False
    if len(set(cert.witnesses)) != len(cert.witnesses):
        return False
    if len(cert.witnesses) != cert.value:
        return False
    if K.is_finite:
        return len(roots_finite(f)) == cert.value
    if cert.value == 3:
        return True
    red = reduction_from_certificate(K, cert)
    fb = red.poly(f.monic())
    return fb.gcd(fb.derivative()).degree() == 0 and len(roots_finite(fb)) == cert.value


# --- factorization over a number field ------------------------------------------

def _norm(g):
    """Norm of ``g`` from ``K[x]`` down to ``QQ[x]``, as a resultant in ``y``."""
    import sympy

    K = g.field
    x, y = sympy.symbols("x y")
    pi = sum(sympy.Rational(c.numerator, c.denominator) * y**i for i, c in enumerate(K.modulus))
    G = 0
    for i, c in enumerate(g.coeffs):
        G += sum(sympy.Rational(a.numerator, a.denominator) * y**j for j, a in enumerate(c)) * x**i
    N = sympy.Poly(sympy.resultant(pi, sympy.expand(G), y), x)
    return Poly(QQ, [Fraction(int(c.p), int(c.q)) for c in reversed(N.all_coeffs())])


def _shift(g, c):
    """``g(x + c)`` for a constant ``c`` of K."""
    return g.taylor_shift(c)


def _trager(g):
    K = g.field
    theta = K.gen()
    for k in range(0, 40):
        s = (k + 1) // 2 * (1 if k % 2 else -1)
        sh = K.scale(theta, Fraction(s))
        gs = _shift(g, K.neg(sh))
        N = _norm(gs)
        if N.gcd(N.derivative()).degree() == 0:
            break
    else:
        raise Undetermined("no shift makes the norm squarefree")
    facs = factor_rational(N)
    if len(facs) == 1:
        return [g.monic()]
    out = []
    for h, _ in facs:
        d = gs.gcd(h.map_coeffs(K.embed, K))
        if d.degree() > 0:
            out.append(_shift(d, sh).monic())
    return out


def factor_number_field(f):
    """Factor ``f`` over ``K = QQ[y]/(pi)`` into monic irreducibles."""
    K = f.field
    if not _is_number_field(K):
        raise TypeError(f"expected a number field, got {K!r}")
    out = []
    for g, m in squarefree_decomposition(f):
        if g.degree() == 1:
            out.append((g, m))
            continue
        out.extend((h, m) for h in _trager(g))
    prod = Poly(K, [K.one])
    for h, m in out:
        prod = prod * h**m
    if prod != f.monic():
        raise ConsistencyError("number-field factorization does not multiply back")
    return sorted(out, key=lambda hm: (hm[0].degree(), hm[1], hm[0].key()))
