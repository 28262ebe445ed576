"""Univariate factorization and root finding.

Finite fields: squarefree decomposition, distinct-degree splitting and
Cantor-Zassenhaus equal-degree splitting (odd characteristic).  The random
choices come from a seeded generator, and factor lists are sorted, so every
call is reproducible.

The rationals go through sympy's Zassenhaus implementation behind a hard
degree limit.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from ..errors import CapabilityError
from .fields import QQ, ExtensionField, PrimeField, RationalField
from .poly import Poly

QQ_DEGREE_LIMIT = 30


def _x(K):
    return Poly.gen(K)


def _pth_root_element(K, a):
    # Frobenius is a bijection on a finite field; its inverse is a -> a^(q/p).
    return K.pow(a, K.order // K.characteristic)


def _pth_root_poly(f):
    K = f.field
    p = K.characteristic
    return Poly(K, [_pth_root_element(K, f.coeffs[i]) for i in range(0, len(f.coeffs), p)])


def squarefree_decomposition(f):
    """Return ``[(g, m), ...]`` with ``f = lc * prod g^m``, ``g`` monic squarefree."""
    if f.is_zero():
        raise ValueError("squarefree decomposition of zero")
    f = f.monic()
    K = f.field
    if f.degree() < 1:
        return []
    out = {}

    def record(g, m):
        if g.degree() > 0:
            out[g] = out.get(g, 0) + m

    fp = f.derivative()
    if fp.is_zero():
        for g, m in squarefree_decomposition(_pth_root_poly(f)):
            record(g, m * K.characteristic)
        return sorted(out.items(), key=lambda gm: (gm[1], gm[0].key()))
    c = f.gcd(fp)
    w = f.exact_div(c)
    i = 1
    while w.degree() > 0:
        y = w.gcd(c)
        z = w.exact_div(y)
        record(z.monic(), i)
        i += 1
        w = y
        c = c.exact_div(y)
    if c.degree() > 0:
        # only reachable in positive characteristic
        for g, m in squarefree_decomposition(_pth_root_poly(c.monic())):
            record(g, m * K.characteristic)
    return sorted(out.items(), key=lambda gm: (gm[1], gm[0].key()))


def squarefree_part(f):
    out = Poly(f.field, [f.field.one])
    for g, _ in squarefree_decomposition(f):
        out = out * g
    return out


def distinct_degree(f):
    """Split a monic squarefree ``f`` into products of equal-degree irreducibles."""
    K = f.field
    q = K.order
    x = _x(K)
    res = []
    g = f
    h = x % g
    i = 1
    while g.degree() >= 2 * i:
        h = h.powmod(q, g)
        d = g.gcd(h - x)
        if d.degree() > 0:
            res.append((d, i))
            g = g.exact_div(d)
            h = h % g
        i += 1
    if g.degree() > 0:
        res.append((g.monic(), g.degree()))
    return res


def _random_poly(K, n, rng):
    return Poly(K, [K.random_element(rng) for _ in range(n)])


def equal_degree(f, d, rng=None):
    """Cantor-Zassenhaus split of a product of degree-``d`` irreducibles."""
    K = f.field
    if K.characteristic == 2:
        raise CapabilityError("equal-degree splitting is implemented for odd characteristic only")
    if f.degree() == d:
        return [f.monic()]
    if rng is None:
        rng = random.Random(0x5EED ^ f.degree())
    e = (K.order**d - 1) // 2
    one = Poly(K, [K.one])
    while True:
        a = _random_poly(K, f.degree(), rng)
        if a.degree() < 1:
            continue
        g = f.gcd(a)
        if 0 < g.degree() < f.degree():
            break
        b = a.powmod(e, f) - one
        g = f.gcd(b)
        if 0 < g.degree() < f.degree():
            break
    return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor_finite(f):
    out = []
    rng = random.Random(0x5EED)
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                out.append((irr, m))
    return sorted(out, key=lambda pm: (pm[0].key(), pm[1]))


def roots_finite(f):
    """Distinct roots of ``f`` in its (finite) coefficient field, sorted."""
    K = f.field
    if f.is_zero():
        raise ValueError("roots of the zero polynomial")
    if f.degree() < 1:
        return []
    f = f.monic()
    x = _x(K)
    g = f.gcd(x.powmod(K.order, f) - x)
    if g.degree() < 1:
        return []
    return sorted(K.neg(h.coeffs[0]) for h in equal_degree(g, 1))


def is_irreducible(f):
    """Rabin's test over a finite field."""
    K = f.field
    n = f.degree()
    if n < 1:
        return False
    if n == 1:
        return True
    f = f.monic()
    x = _x(K)
    q = K.order
    if x.powmod(q**n, f) != x % f:
        return False
    for r in _prime_divisors(n):
        h = x.powmod(q ** (n // r), f)
        if f.gcd(h - x).degree() > 0:
            return False
    return True


def _prime_divisors(n):
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _monic_polys(K, n):
    elems = list(K.elements())
    for tail in itertools.product(elems, repeat=n):
        yield Poly(K, list(reversed(tail)) + [K.one])


def smallest_irreducible(K, n):
    """Smallest monic irreducible of degree ``n`` over ``K``.

    Ordered lexicographically by ``(c_{n-1}, ..., c_0)``, which makes the
    generated modulus reproducible.
    """
    for f in _monic_polys(K, n):
        if is_irreducible(f):
            return f
    raise AssertionError("no irreducible polynomial found")


def primitive_modulus(p, n):
    """Smallest monic degree-``n`` polynomial over GF(p) whose root generates GF(p^n)*."""
    from sympy import factorint

    K = PrimeField(p)
    order = p**n - 1
    cofactors = [order // r for r in factorint(order)]
    for f in _monic_polys(K, n):
        if f.coeffs[0] == 0 or not is_irreducible(f):
            continue
        x = _x(K)
        if all(x.powmod(c, f) != Poly(K, [1]) for c in cofactors):
            return f
    raise AssertionError("no primitive polynomial found")


# --- rationals ------------------------------------------------------------

def _to_sympy(f, var):
    import sympy

    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(f.coeffs)], var)


def _from_sympy(sp):
    return Poly(QQ, [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())])


def factor_rational(f, degree_limit=None):
    """Factor over QQ; ``degree_limit`` (default ``QQ_DEGREE_LIMIT``) caps the input degree."""
    import sympy

    limit = QQ_DEGREE_LIMIT if degree_limit is None else degree_limit
    if f.degree() > limit:
        raise CapabilityError(
            f"factorization over QQ supports degree <= {limit}, got degree {f.degree()}"
        )
    t = sympy.Symbol("t")
    _, facs = sympy.factor_list(_to_sympy(f, t))
    out = [(_from_sympy(g).monic(), int(m)) for g, m in facs if g.degree() > 0]
    return sorted(out, key=lambda pm: (pm[0].key(), pm[1]))


def roots_rational(f):
    return sorted(
        -g.coeffs[0] for g, _ in factor_rational(f) if g.degree() == 1
    )


def factor_univariate(f, field=None):
    """Factor ``f`` into monic irreducibles with multiplicities.

    ``field`` defaults to the coefficient field of ``f``; it may be QQ or
    any finite field of odd characteristic.
    """
    if f.is_zero():
        raise ValueError("cannot factor the zero polynomial")
    K = field if field is not None else f.field
    if isinstance(K, RationalField):
        return factor_rational(f)
    if K.is_finite:
        return factor_finite(f)
    if isinstance(K, ExtensionField):
        from .residue import factor_number_field

        return factor_number_field(f)
    raise TypeError(f"unsupported field {K!r}")


def roots(f):
    """Distinct roots of ``f`` lying in its coefficient field."""
    K = f.field
    if K.is_finite:
        return roots_finite(f)
    if isinstance(K, RationalField):
        return roots_rational(f)
    return sorted(
        K.neg(g.coeffs[0]) for g, _ in factor_univariate(f) if g.degree() == 1
    )
