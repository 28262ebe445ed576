"""Exact fields: the rationals, prime fields and simple algebraic extensions.

Elements are plain Python values so they hash and compare cheaply:

* ``QQ``           -- :class:`fractions.Fraction`
* ``PrimeField``   -- ``int`` in ``range(p)``
* ``ExtensionField`` -- ``tuple`` of base-field elements, the coordinates of
  ``a_0 + a_1 y + ... + a_{n-1} y^{n-1}`` modulo a monic irreducible modulus.

Extensions may be stacked, which is how residue fields of places of
``k(t)`` are built: ``k_v = k[y]/(pi(y))`` with ``y`` the image of ``t``.
The arithmetic lives on the field object (``K.mul(a, b)``), in the style
of a computer-algebra domain, so a polynomial class can be written once
for every field.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import cached_property


class Field:
    characteristic: int = 0
    order: int | None = None

    @property
    def is_finite(self):
        return self.order is not None

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if e < 0:
            a, e = self.inv(a), -e
        result = self.one
        while e:
            if e & 1:
                result = self.mul(result, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return result

    def is_square(self, a):
        """Euler's criterion; finite fields of odd characteristic only."""
        if self.order is None or self.characteristic == 2:
            raise TypeError(f"is_square needs a finite field of odd order, got {self}")
        if self.is_zero(a):
            return True
        return self.pow(a, (self.order - 1) // 2) == self.one

    def sum(self, items):
        acc = self.zero
        for a in items:
            acc = self.add(acc, a)
        return acc


class RationalField(Field):
    characteristic = 0
    order = None
    degree = 1
    zero = Fraction(0)
    one = Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(a)

    def div(self, a, b):
        return Fraction(a) / b

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return Fraction(n)

    def coerce(self, a):
        return Fraction(a)

    @property
    def prime_field(self):
        return self

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


QQ = RationalField()


class PrimeField(Field):
    degree = 1

    def __init__(self, p):
        if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.characteristic = p
        self.order = p
        self.zero = 0
        self.one = 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError(f"inverse of zero in GF({self.p})")
        return pow(a, -1, self.p)

    def pow(self, a, e):
        return pow(a, e, self.p)

    def is_zero(self, a):
        return a == 0

    def from_int(self, n):
        return n % self.p

    def coerce(self, a):
        if isinstance(a, Fraction):
            return a.numerator * pow(a.denominator, -1, self.p) % self.p
        return int(a) % self.p

    def elements(self):
        return range(self.p)

    def random_element(self, rng):
        return rng.randrange(self.p)

    def coords(self, a):
        return [a]

    @property
    def prime_field(self):
        return self

    def format(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


def _trim(c, K):
    c = list(c)
    while c and K.is_zero(c[-1]):
        c.pop()
    return c


def _divmod_lists(a, b, K):
    a = list(a)
    inv_lead = K.inv(b[-1])
    db = len(b) - 1
    q = [K.zero] * max(len(a) - db, 0)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if K.is_zero(c):
            continue
        c = K.mul(c, inv_lead)
        q[i - db] = c
        for j in range(db + 1):
            a[i - db + j] = K.sub(a[i - db + j], K.mul(c, b[j]))
    return q, _trim(a[:db], K)


def _mul_lists(a, b, K):
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return out


class ExtensionField(Field):
    """``base[y] / (modulus(y))`` with a monic irreducible modulus.

    The modulus is given low-to-high as a sequence of base elements (or any
    object with a ``coeffs`` attribute). Irreducibility is the caller's
    responsibility; :func:`ellrank.algebra.factor.is_irreducible` checks it
    over finite fields.
    """

    def __init__(self, base, modulus, name="y"):
        coeffs = tuple(getattr(modulus, "coeffs", modulus))
        coeffs = tuple(base.coerce(c) if hasattr(base, "coerce") else c for c in coeffs)
        if len(coeffs) < 2:
            raise ValueError("modulus must have degree >= 1")
        lead = coeffs[-1]
        if lead != base.one:
            inv = base.inv(lead)
            coeffs = tuple(base.mul(c, inv) for c in coeffs)
        self.base = base
        self.modulus = coeffs
        self.n = len(coeffs) - 1
        self.name = name
        self.characteristic = base.characteristic
        self.order = None if base.order is None else base.order**self.n
        self.zero = (base.zero,) * self.n
        self.one = (base.one,) + (base.zero,) * (self.n - 1)

    @cached_property
    def degree(self):
        """Degree over the prime field."""
        return self.n * self.base.degree

    @property
    def prime_field(self):
        return self.base.prime_field

    def _norm(self, c):
        c = list(c[: self.n])
        return tuple(c + [self.base.zero] * (self.n - len(c)))

    def gen(self):
        if self.n == 1:
            return (self.base.neg(self.modulus[0]),)
        return self._norm([self.base.zero, self.base.one])

    def embed(self, b):
        return (b,) + (self.base.zero,) * (self.n - 1)

    def add(self, a, b):
        B = self.base
        return tuple(B.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        B = self.base
        return tuple(B.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        B = self.base
        return tuple(B.neg(x) for x in a)

    def mul(self, a, b):
        B = self.base
        n = self.n
        prod = _mul_lists(_trim(a, B), _trim(b, B), B)
        mod = self.modulus
        for i in range(len(prod) - 1, n - 1, -1):
            c = prod[i]
            if B.is_zero(c):
                continue
            for j in range(n):
                prod[i - n + j] = B.sub(prod[i - n + j], B.mul(c, mod[j]))
        return self._norm(prod)

    def scale(self, a, b):
        """Multiply ``a`` by a base-field element ``b``."""
        B = self.base
        return tuple(B.mul(x, b) for x in a)

    def inv(self, a):
        B = self.base
        r0, r1 = list(self.modulus), _trim(a, B)
        if not r1:
            raise ZeroDivisionError(f"inverse of zero in {self}")
        s0, s1 = [], [B.one]
        while len(r1) > 1:
            q, r = _divmod_lists(r0, r1, B)
            r0, r1 = r1, r
            qs = _mul_lists(q, s1, B)
            width = max(len(s0), len(qs))
            s0 = s0 + [B.zero] * (width - len(s0))
            qs = qs + [B.zero] * (width - len(qs))
            s0, s1 = s1, _trim([B.sub(x, y) for x, y in zip(s0, qs)], B)
        if not r1:
            raise ZeroDivisionError(f"modulus of {self} is reducible")
        c = B.inv(r1[0])
        return self._norm([B.mul(x, c) for x in s1])

    def is_zero(self, a):
        return all(self.base.is_zero(x) for x in a)

    def from_int(self, n):
        return self.embed(self.base.from_int(n))

    def coerce(self, a):
        if isinstance(a, tuple) and len(a) == self.n:
            return a
        return self.embed(self.base.coerce(a))

    def elements(self):
        for c in itertools.product(list(self.base.elements()), repeat=self.n):
            yield tuple(c)

    def random_element(self, rng):
        return tuple(self.base.random_element(rng) for _ in range(self.n))

    def coords(self, a):
        out = []
        for x in a:
            out.extend(self.base.coords(x))
        return out

    def from_coords(self, coords):
        step = self.base.degree
        if isinstance(self.base, ExtensionField):
            return tuple(
                self.base.from_coords(coords[i * step : (i + 1) * step]) for i in range(self.n)
            )
        return tuple(coords[: self.n])

    def format(self, a):
        terms = []
        for i, c in enumerate(a):
            if self.base.is_zero(c):
                continue
            cs = self.base.format(c)
            if i == 0:
                terms.append(cs)
            else:
                mono = self.name if i == 1 else f"{self.name}^{i}"
                terms.append(mono if c == self.base.one else f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __eq__(self, other):
        return (
            isinstance(other, ExtensionField)
            and other.base == self.base
            and other.modulus == self.modulus
        )

    def __hash__(self):
        return hash(("Ext", self.base, self.modulus))

    def __repr__(self):
        from .poly import Poly

        return f"{self.base!r}[{self.name}]/({Poly(self.base, self.modulus).format(self.name)})"


def prime_subfield_value(K, a):
    """Return ``a`` as an integer when it lies in the prime field of ``K``."""
    while isinstance(K, ExtensionField):
        if any(not K.base.is_zero(x) for x in a[1:]):
            raise ValueError("element is not in the prime field")
        a, K = a[0], K.base
    return a
