"""Dense univariate polynomials over any field from :mod:`.fields`."""

from __future__ import annotations

from .fields import QQ as QQ_FIELD


class Poly:
    """Immutable polynomial, coefficients stored low-to-high.

    The zero polynomial has an empty coefficient tuple and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        c = list(coeffs)
        is_zero = field.is_zero
        while c and is_zero(c[-1]):
            c.pop()
        self.field = field
        self.coeffs = tuple(c)

    # constructors -------------------------------------------------------
    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.from_int(i) for i in ints])

    @classmethod
    def const(cls, field, c):
        return cls(field, [c])

    @classmethod
    def gen(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def monomial(cls, field, n, c=None):
        return cls(field, [field.zero] * n + [field.one if c is None else c])

    # basic properties ---------------------------------------------------
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def valuation(self):
        """Order of vanishing at 0; ``None`` for the zero polynomial."""
        for i, c in enumerate(self.coeffs):
            if not self.field.is_zero(c):
                return i
        return None

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def key(self):
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs and self.field == other.field
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Poly({self.format()!r} over {self.field!r})"

    def format(self, var="t"):
        K = self.field
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if K.is_zero(c):
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            negative = K is QQ_FIELD and c < 0
            if negative:
                c = -c
            cs = K.format(c)
            if mono and c == K.one:
                terms.append(mono)
            elif not mono:
                terms.append(cs if not any(ch in cs for ch in "+ ") else f"({cs})")
            else:
                if any(ch in cs for ch in "+ "):
                    cs = f"({cs})"
                terms.append(f"{cs}*{mono}")
            if negative:
                terms[-1] = "-" + terms[-1]
        out = terms[0]
        for term in terms[1:]:
            out += f" - {term[1:]}" if term.startswith("-") else f" + {term}"
        return out

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return Poly(self.field, [self.field.coerce(other)])

    def __add__(self, other):
        other = self._coerce(other)
        K = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, y in enumerate(b):
            out[i] = K.add(out[i], y)
        return Poly(K, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.field
        return Poly(K, [K.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        K = self.field
        if not isinstance(other, Poly):
            c = K.coerce(other)
            return Poly(K, [K.mul(x, c) for x in self.coeffs])
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(K, ())
        out = [K.zero] * (len(a) + len(b) - 1)
        add, mul, is_zero = K.add, K.mul, K.is_zero
        for i, x in enumerate(a):
            if is_zero(x):
                continue
            for j, y in enumerate(b):
                out[i + j] = add(out[i + j], mul(x, y))
        return Poly(K, out)

    __rmul__ = __mul__

    def scale(self, c):
        K = self.field
        return Poly(K, [K.mul(x, c) for x in self.coeffs])

    def __pow__(self, e):
        result = Poly(self.field, [self.field.one])
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __divmod__(self, other):
        K = self.field
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        db = len(b) - 1
        if len(a) <= db:
            return Poly(K, ()), self
        inv_lead = K.inv(b[-1])
        q = [K.zero] * (len(a) - db)
        sub, mul, is_zero = K.sub, K.mul, K.is_zero
        for i in range(len(a) - 1, db - 1, -1):
            c = a[i]
            if is_zero(c):
                continue
            c = mul(c, inv_lead)
            q[i - db] = c
            for j in range(db):
                a[i - db + j] = sub(a[i - db + j], mul(c, b[j]))
            a[i] = K.zero
        return Poly(K, q), Poly(K, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other):
        q, r = divmod(self, other)
        if not r.is_zero():
            raise ArithmeticError("inexact polynomial division")
        return q

    def monic(self):
        if not self.coeffs or self.coeffs[-1] == self.field.one:
            return self
        return self.scale(self.field.inv(self.coeffs[-1]))

    def derivative(self):
        K = self.field
        return Poly(K, [K.mul(K.from_int(i), c) for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a field element or composition with a Poly."""
        if isinstance(x, Poly):
            return self.compose(x)
        K = self.field
        acc = K.zero
        for c in reversed(self.coeffs):
            acc = K.add(K.mul(acc, x), c)
        return acc

    def compose(self, g):
        acc = Poly(self.field, ())
        for c in reversed(self.coeffs):
            acc = acc * g + Poly(self.field, [c])
        return acc

    def taylor_shift(self, c):
        """Return ``f(t + c)`` (synthetic division, no full composition)."""
        K = self.field
        a = list(self.coeffs)
        n = len(a)
        for i in range(n):
            for j in range(n - 2, i - 1, -1):
                a[j] = K.add(a[j], K.mul(c, a[j + 1]))
        return Poly(K, a)

    def reverse(self, n=None):
        """Return ``t^n f(1/t)``; ``n`` defaults to the degree."""
        if n is None:
            n = self.degree()
        if n < self.degree():
            raise ValueError("reverse degree smaller than polynomial degree")
        c = list(self.coeffs) + [self.field.zero] * (n + 1 - len(self.coeffs))
        return Poly(self.field, c[::-1])

    def shift_down(self, k):
        """Exact division by ``t^k``."""
        if k == 0:
            return self
        if any(not self.field.is_zero(c) for c in self.coeffs[:k]):
            raise ArithmeticError("polynomial not divisible by requested power of t")
        return Poly(self.field, self.coeffs[k:])

    def shift_up(self, k):
        return Poly(self.field, [self.field.zero] * k + list(self.coeffs))

    def truncate(self, n):
        return Poly(self.field, self.coeffs[:n])

    def map_coeffs(self, fn, field):
        return Poly(field, [fn(c) for c in self.coeffs])

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other):
        """Return ``(g, s, u)`` with ``g = s*self + u*other`` and ``g`` monic."""
        K = self.field
        r0, r1 = self, other
        s0, s1 = Poly(K, [K.one]), Poly(K, ())
        u0, u1 = Poly(K, ()), Poly(K, [K.one])
        while not r1.is_zero():
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            u0, u1 = u1, u0 - q * u1
        if r0.is_zero():
            return r0, s0, u0
        c = K.inv(r0.lc())
        return r0.scale(c), s0.scale(c), u0.scale(c)

    def powmod(self, e, m):
        result = Poly(self.field, [self.field.one]) % m
        base = self % m
        while e:
            if e & 1:
                result = (result * base) % m
            e >>= 1
            if e:
                base = (base * base) % m
        return result


def poly_from_roots(field, roots):
    out = Poly(field, [field.one])
    for r in roots:
        out = out * Poly(field, [field.neg(r), field.one])
    return out
