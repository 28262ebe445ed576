"""Pure-Python point-counting kernel (fallback for the compiled one).

Elements of ``GF(p^n) = GF(p)[w]/(M)`` with ``M`` primitive are handled as
discrete logarithms base ``w``: ``0..Q-2``, with ``Q - 1`` standing for
zero.  Addition uses a Zech table ``zech[k] = log(1 + w^k)``.  An element
in "encoded" form is the integer ``sum c_j p^j`` of its coordinates.

For ``x^3 + a x + b`` with ``ab != 0`` the substitution ``x = (b/a) y``
gives ``y^3 + c y + c`` with ``c = a^3/b^2``, so one table of root counts
indexed by ``log c`` answers every fiber.
"""


class FieldTables:
    def __init__(self, p, n, modulus):
        """``modulus`` holds the low coefficients ``M_0..M_{n-1}`` of monic ``M``."""
        if len(modulus) != n:
            raise ValueError("modulus must have n low coefficients")
        self.p = p
        self.n = n
        self.Q = p**n
        self.N1 = self.Q - 1
        self.ZERO = self.N1
        self.half = self.N1 // 2
        Q, N1 = self.Q, self.N1
        top_unit = p ** (n - 1)
        neg_mod = [(-c) % p for c in modulus]
        exp = [0] * N1
        log = [self.ZERO] * Q
        e = 1
        for k in range(N1):
            if log[e] != self.ZERO or (k and e == 1):
                raise ValueError("modulus is not primitive")
            exp[k] = e
            log[e] = k
            top = e // top_unit
            e = (e - top * top_unit) * p
            if top:
                out, scale = 0, 1
                for j in range(n):
                    d = (e // scale) % p
                    out += ((d + top * neg_mod[j]) % p) * scale
                    scale *= p
                e = out
        if e != 1:
            raise ValueError("modulus is not primitive")
        zech = [self.ZERO] * N1
        for k in range(N1):
            x = exp[k]
            x = x - (p - 1) if x % p == p - 1 else x + 1
            zech[k] = log[x] if x else self.ZERO
        self.exp = exp
        self.log = log
        self.zech = zech
        self._roots = None

    # scalar helpers (used for embedding coefficients)
    def from_encoded(self, e):
        return self.log[e]

    def to_encoded(self, la):
        return 0 if la == self.ZERO else self.exp[la]

    def mul(self, a, b):
        if a == self.ZERO or b == self.ZERO:
            return self.ZERO
        return (a + b) % self.N1

    def add(self, a, b):
        if a == self.ZERO:
            return b
        if b == self.ZERO:
            return a
        z = self.zech[(b - a) % self.N1]
        return self.ZERO if z == self.ZERO else (a + z) % self.N1

    def neg(self, a):
        return a if a == self.ZERO else (a + self.half) % self.N1

    def root_table(self):
        """``R[log c]`` = number of roots of ``y^3 + c y + c``, ``c != 0``."""
        if self._roots is None:
            N1, half, zech, ZERO = self.N1, self.half, self.zech, self.ZERO
            R = [0] * N1
            for ly in range(N1):
                z = zech[ly]
                if z == ZERO:
                    continue
                R[(half + 3 * ly - z) % N1] += 1
            self._roots = R
        return self._roots

    def count_range(self, A, B, k0, k1, include_zero):
        """Sum of fiber root counts over ``t = w^k`` (``k0 <= k < k1``), optionally ``t = 0``.

        ``A`` and ``B`` are coefficient logs, low to high.  Returns
        ``(roots, singular)`` where ``singular`` counts the ``t`` at which
        ``4a^3 + 27b^2`` vanishes (skipped in ``roots``).
        """
        N1, ZERO, half, zech = self.N1, self.ZERO, self.half, self.zech
        R = self.root_table()
        l4 = self.log[4 % self.p]
        l27 = self.log[27 % self.p]
        cube_split = N1 % 3 == 0
        Ar = list(reversed(A))
        Br = list(reversed(B))
        total = 0
        singular = 0
        ts = ([ZERO] if include_zero else []) + list(range(k0, k1))
        for lt in ts:
            a = ZERO
            for c in Ar:
                if a != ZERO:
                    a = ZERO if lt == ZERO else (a + lt) % N1
                if c != ZERO:
                    if a == ZERO:
                        a = c
                    else:
                        z = zech[(c - a) % N1]
                        a = ZERO if z == ZERO else (a + z) % N1
            b = ZERO
            for c in Br:
                if b != ZERO:
                    b = ZERO if lt == ZERO else (b + lt) % N1
                if c != ZERO:
                    if b == ZERO:
                        b = c
                    else:
                        z = zech[(c - b) % N1]
                        b = ZERO if z == ZERO else (b + z) % N1
            # 4a^3 + 27b^2 == 0 ?
            u = ZERO if a == ZERO else (l4 + 3 * a) % N1
            v = ZERO if b == ZERO else (l27 + 2 * b) % N1
            if u == ZERO and v == ZERO:
                singular += 1
                continue
            if u != ZERO and v != ZERO and zech[(v - u) % N1] == ZERO:
                singular += 1
                continue
            if b == ZERO:
                total += 3 if (a + half) % 2 == 0 else 1
            elif a == ZERO:
                if not cube_split:
                    total += 1
                else:
                    total += 3 if (b + half) % 3 == 0 else 0
            else:
                total += R[(3 * a - 2 * b) % N1]
        return total, singular
