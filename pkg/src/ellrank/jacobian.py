"""Brute-force divisor class group of a small descent curve over GF(p).

Functions on C are written ``(c0 + c1 x + c2 x^2) / den`` with ``c_i`` in
``GF(p)[t]`` of degree at most ``B``.  Membership in ``L(D)`` becomes linear
conditions on the coefficients, read off from power series expansions of
``t`` and ``x`` at the places where a pole or a forced zero can occur.  The
denominator covers the allowed poles plus the index of ``k[t][x]`` in the
integral closure (a square factor of the discriminant), so once the solution
space reaches the Riemann-Roch dimension it is all of ``L(D)``.

Linear equivalence of ``D1`` and ``D2`` is decided by certifying
``L(D1 - D2 + m P0)`` and then imposing the true condition at ``P0`` with
the same search space.
"""

from __future__ import annotations

import itertools
import math
from functools import cached_property

from .algebra.factor import factor_univariate, smallest_irreducible
from .algebra.fields import ExtensionField, PrimeField
from .algebra.local import local_branches
from .algebra.poly import Poly
from .descent import build_descent_curve, local_cubic
from .errors import CapabilityError, ConsistencyError
from .places import Place

MAX_Q = 9
MAX_GENUS = 2
MAX_CLASS_NUMBER = 10**5


# --- truncated power series over a field ---------------------------------------

def _mul(K, a, b, n):
    out = [K.zero] * n
    for i, x in enumerate(a[:n]):
        if K.is_zero(x):
            continue
        for j, y in enumerate(b[: n - i]):
            out[i + j] = K.add(out[i + j], K.mul(x, y))
    return out


def _add(K, a, b, n):
    out = [K.zero] * n
    for i in range(n):
        x = a[i] if i < len(a) else K.zero
        y = b[i] if i < len(b) else K.zero
        out[i] = K.add(x, y)
    return out


def _shift(K, a, k, n):
    """``tau^k a`` truncated to length ``n``."""
    return ([K.zero] * k + list(a))[:n] + [K.zero] * max(0, n - k - len(a))


# --- places of C -------------------------------------------------------------------

class CurvePlace:
    """A place of C: ``t`` and ``x`` as power series in a uniformizer ``tau``.

    Locally ``s = c tau^e`` (``s = t - theta``, or ``1/t`` at infinity) and
    the cubic's variable is ``shift(s) + tau^h Z(tau)`` with ``Z(0) = z0``.
    At infinity that variable is ``X = s^(2n) x``.
    """

    def __init__(self, v, index, e, f, field, embed, c, h, z0, shift, coeffs, n_inf):
        self.v = v
        self.index = index
        self.e = e
        self.f = f
        self.field = field
        self.embed = embed
        self.c = c
        self.h = h
        self.z0 = z0
        self.shift = shift
        self.coeffs = coeffs
        self.n_inf = n_inf
        self._X = []

    @property
    def degree(self):
        return self.v.degree * self.f

    def key(self):
        return (self.v.sort_key(), self.index)

    def __lt__(self, other):
        return self.key() < other.key()

    def __eq__(self, other):
        return isinstance(other, CurvePlace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def label(self):
        return f"{self.v.label()}#{self.index}"

    def __repr__(self):
        return f"CurvePlace({self.label()}, e={self.e}, deg={self.degree})"

    def _subst(self, poly):
        """``poly(c tau^e)`` as a list over the place's residue field."""
        K = self.field
        out = [K.zero] * (self.e * max(poly.degree(), 0) + 1)
        cp = K.one
        for j, a in enumerate(poly.coeffs):
            out[self.e * j] = K.mul(self.embed(a), cp)
            cp = K.mul(cp, self.c)
        return out

    @cached_property
    def _local_cubic(self):
        C = [self._subst(ci) for ci in self.coeffs]
        lam = min(
            self.e * ci.valuation() + self.h * i for i, ci in enumerate(self.coeffs) if not ci.is_zero()
        )
        return C, lam

    def X(self, n):
        """The cubic's variable as a power series in ``tau``, mod ``tau^n``."""
        if len(self._X) >= n:
            return self._X[:n]
        K = self.field
        base = self._subst(self.shift) if not self.shift.is_zero() else []
        if self.z0 is None:
            X = _add(K, base, [], n)
        else:
            Z = self._lift_Z(max(n - self.h, 1))
            X = _add(K, base, _shift(K, Z, self.h, n), n)
        self._X = X
        return X

    def _eval_G(self, Z, n, lam, C):
        K = self.field
        total = [K.zero] * (lam + n)
        Zp = [K.one]
        for i, Ci in enumerate(C):
            if i:
                Zp = _mul(K, Zp, Z, lam + n)
            term = _shift(K, _mul(K, Ci, Zp, lam + n), self.h * i, lam + n)
            total = _add(K, total, term, lam + n)
        return total

    def _lift_Z(self, n):
        K = self.field
        C, lam = self._local_cubic
        d = K.zero
        zp = K.one
        for i in range(1, len(C)):
            ci = C[i][lam - self.h * i] if 0 <= lam - self.h * i < len(C[i]) else K.zero
            d = K.add(d, K.mul(K.mul(K.from_int(i), ci), zp))
            zp = K.mul(zp, self.z0)
        if K.is_zero(d):
            raise ConsistencyError(f"branch at {self.label()} is not a simple root")
        dinv = K.inv(d)
        Z = [self.z0] + [K.zero] * (n - 1)
        for _ in range(n + 1):
            G = self._eval_G(Z, n, lam, C)
            if any(not K.is_zero(g) for g in G[:lam]):
                raise ConsistencyError(f"expansion at {self.label()} lost its leading terms")
            corr = G[lam:]
            if all(K.is_zero(g) for g in corr):
                break
            Z = [K.sub(z, K.mul(g, dinv)) for z, g in zip(Z, corr)]
        return Z

    def t_power_series(self, n):
        """``t`` at a finite place, as a power series mod ``tau^n``."""
        K = self.field
        out = [K.zero] * n
        out[0] = self.embed(self.v.theta)
        if self.e < n:
            out[self.e] = K.add(out[self.e], self.c)
        return out


def _bezout(e, h):
    """``(alpha, beta)`` with ``beta e - alpha h = 1``."""
    if e == 1:
        return 0, 1
    alpha = (-pow(h, -1, e)) % e
    return alpha, (1 + alpha * h) // e


def places_over(E, v):
    """All places of C above the place ``v`` of the line."""
    kv = v.residue_field
    coeffs = local_cubic(E, v)
    D = E.disc_core
    n_inf = E.infinity_weight if v.is_infinite else 0
    ramified = v.is_infinite or (D % v.pi).is_zero()
    out = []
    if not ramified:
        c0 = Poly(kv, [coeffs[0].coeff(0), coeffs[1].coeff(0), kv.zero, kv.one])
        for idx, (psi, _) in enumerate(factor_univariate(c0)):
            field, embed, z0 = _extend_by(kv, psi)
            out.append(CurvePlace(v, idx, 1, psi.degree(), field, embed, field.one, 0, z0,
                                  Poly(kv, ()), coeffs, n_inf))
        return out
    for idx, b in enumerate(sorted(local_branches(coeffs), key=_branch_key)):
        if b.exact:
            out.append(CurvePlace(v, idx, 1, 1, kv, lambda a: a, kv.one, 0, None,
                                  b.shift, b.coeffs, n_inf))
            continue
        field, embed, y0 = _extend_by(kv, b.phi)
        alpha, beta = _bezout(b.e, b.h)
        c = field.pow(y0, alpha)
        z0 = field.pow(y0, beta)
        out.append(CurvePlace(v, idx, b.e, b.phi.degree(), field, embed, c, b.h, z0,
                              b.shift, b.coeffs, n_inf))
    return out


def _branch_key(b):
    return (b.e, b.f, b.h, b.exact, () if b.phi is None else b.phi.key(), b.shift.key())


def _extend_by(kv, psi):
    """Residue field ``kv[z]/(psi)``, the embedding of ``kv``, and the root ``z``."""
    if psi.degree() == 1:
        root = kv.neg(psi.monic().coeffs[0])
        return kv, (lambda a: a), root
    L = ExtensionField(kv, psi.monic().coeffs, name="z")
    return L, L.embed, L.gen()


# --- linear algebra over GF(p) ----------------------------------------------------

def nullspace_mod_p(rows, ncols, p):
    """Basis of ``{u : rows . u = 0}`` over GF(p), in reduced form."""
    mat = [list(r) for r in rows if any(r)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][col] % p), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col] % p:
                fct = mat[i][col]
                mat[i] = [(x - fct * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for i, pc in enumerate(pivots):
            vec[pc] = (-mat[i][fc]) % p
        basis.append(vec)
    return basis


# --- the oracle ------------------------------------------------------------------

class RiemannRochSpace:
    def __init__(self, divisor, den, bound, basis):
        self.divisor = divisor
        self.den = den
        self.bound = bound
        self.basis = basis

    @property
    def dimension(self):
        return len(self.basis)


class DescentJacobian:
    """Divisor classes on the descent curve of ``E`` over GF(p), p <= 9."""

    def __init__(self, E, genus=None):
        K = E.base
        if not isinstance(K, PrimeField) or K.p > MAX_Q:
            raise CapabilityError(f"oracle needs a prime field with q <= {MAX_Q}, got {K!r}")
        self.E = E
        self.K = K
        self.p = K.p
        self.genus = build_descent_curve(E).genus if genus is None else genus
        if self.genus > MAX_GENUS:
            raise CapabilityError(f"oracle supports genus <= {MAX_GENUS}, got {self.genus}")
        self._over = {}
        D = E.disc_core
        self.index_den = Poly(K, [K.one])
        for g, mult in factor_univariate(D):
            self.index_den = self.index_den * g ** (mult // 2)

    # places -------------------------------------------------------------
    def places_over(self, v):
        if v not in self._over:
            self._over[v] = places_over(self.E, v)
        return self._over[v]

    def base_places(self, d):
        """Places of the line of degree exactly ``d``, in a fixed order."""
        K = self.K
        if d == 1:
            yield Place(K)
            for a in range(self.p):
                yield Place(K, Poly(K, [K.neg(a), K.one]))
            return
        for tail in itertools.product(range(self.p), repeat=d):
            f = Poly(K, list(reversed(tail)) + [K.one])
            facs = factor_univariate(f)
            if len(facs) == 1 and facs[0][1] == 1 and facs[0][0].degree() == d:
                yield Place(K, f)

    def places_of_degree(self, d):
        out = []
        for dv in range(1, d + 1):
            if d % dv:
                continue
            for v in self.base_places(dv):
                out.extend(w for w in self.places_over(v) if w.degree == d)
        return sorted(out)

    @cached_property
    def base_point(self):
        for d in range(1, 4):
            pts = self.places_of_degree(d)
            if pts:
                return pts[0]
        raise CapabilityError("no place of degree <= 3 found for the auxiliary point")

    # Riemann-Roch -------------------------------------------------------
    def _den_for(self, divisor):
        den = self.index_den
        need = {}
        for w, n in divisor.items():
            if n > 0 and not w.v.is_infinite:
                need[w.v] = max(need.get(w.v, 0), -(-n // w.e))
        for v, k in need.items():
            den = den * v.pi**k
        return den

    def _constraint_places(self, divisor, den):
        vs = {Place(self.K)}
        for g, _ in factor_univariate(den) if den.degree() > 0 else []:
            vs.add(Place(self.K, g))
        for w in divisor:
            vs.add(w.v)
        out = []
        for v in sorted(vs):
            out.extend(self.places_over(v))
        return out

    def _conditions(self, w, divisor, den, bound):
        """Rows (over GF(p)) forcing ``v_w(N / den) >= -divisor[w]``."""
        K = w.field
        n_w = divisor.get(w, 0)
        if w.v.is_infinite:
            vden = -w.e * den.degree()
            pole = w.e * (bound + 4 * w.n_inf)
        else:
            vden = w.e * _valuation(den, w.v)
            pole = 0
        length = vden - n_w + pole
        if length <= 0:
            return []
        X = w.X(length)
        Xp = [[K.one] + [K.zero] * (length - 1)]
        for _ in range(2):
            Xp.append(_mul(K, Xp[-1], X, length))
        columns = []
        if w.v.is_infinite:
            cinv = K.inv(w.c)
            for i in range(3):
                for a in range(bound + 1):
                    k = pole - w.e * (a + 2 * w.n_inf * i)
                    scale = K.pow(cinv, a + 2 * w.n_inf * i)
                    col = _shift(K, [K.mul(scale, x) for x in Xp[i]], k, length)
                    columns.append(col)
        else:
            T = w.t_power_series(length)
            Tp = [[K.one] + [K.zero] * (length - 1)]
            for _ in range(bound):
                Tp.append(_mul(K, Tp[-1], T, length))
            for i in range(3):
                for a in range(bound + 1):
                    columns.append(_mul(K, Tp[a], Xp[i], length))
        rows = []
        for j in range(length):
            coords = [K.coords(col[j]) for col in columns]
            for r in range(K.degree):
                rows.append([int(c[r]) for c in coords])
        return rows

    def _solve(self, divisor, den, bound):
        rows = []
        for w in self._constraint_places(divisor, den):
            rows.extend(self._conditions(w, divisor, den, bound))
        return nullspace_mod_p(rows, 3 * (bound + 1), self.p)

    def riemann_roch_space(self, divisor):
        """Certified basis of ``L(D)``; needs ``deg D >= 2g - 1``."""
        divisor = {w: n for w, n in divisor.items() if n}
        deg = sum(n * w.degree for w, n in divisor.items())
        if deg < 2 * self.genus - 1:
            raise ValueError("certified mode needs deg D >= 2g - 1")
        target = deg - self.genus + 1
        den = self._den_for(divisor)
        pos = sum(max(n, 0) * w.degree for w, n in divisor.items())
        cap = den.degree() + pos + 4 * self.E.infinity_weight + 2 * self.genus + 8
        for bound in range(0, cap + 1):
            basis = self._solve(divisor, den, bound)
            if len(basis) > target:
                raise ConsistencyError(f"L(D) has dimension {len(basis)} > {target}")
            if len(basis) == target:
                return RiemannRochSpace(divisor, den, bound, basis)
        raise CapabilityError(f"search space cap B = {cap} reached before certification")

    def ell(self, divisor):
        """``dim L(D)`` for any divisor, via a certified larger space."""
        divisor = {w: n for w, n in divisor.items() if n}
        deg = sum(n * w.degree for w, n in divisor.items())
        if deg < 0:
            return 0
        P0 = self.base_point
        need = 2 * self.genus - 1 - deg
        m = max(0, -(-need // P0.degree))
        big = dict(divisor)
        big[P0] = big.get(P0, 0) + m
        W = self.riemann_roch_space(big)
        if m == 0:
            return W.dimension
        return len(self._solve(divisor, W.den, W.bound))

    def equivalent(self, D1, D2):
        diff = dict(D1)
        for w, n in D2.items():
            diff[w] = diff.get(w, 0) - n
        return self.ell(diff) > 0

    # class group --------------------------------------------------------
    def effective_divisors(self, d):
        """Effective divisors of degree ``d`` supported on places of degree <= d."""
        by_deg = {k: self.places_of_degree(k) for k in range(1, d + 1)}
        out = []

        def rec(remaining, min_key, acc):
            if remaining == 0:
                out.append(dict(acc))
                return
            for k in range(1, remaining + 1):
                for w in by_deg[k]:
                    if (k, w.key()) < min_key:
                        continue
                    acc[w] = acc.get(w, 0) + 1
                    rec(remaining - k, (k, w.key()), acc)
                    acc[w] -= 1
                    if not acc[w]:
                        del acc[w]

        rec(d, (0, ()), {})
        return out

    @cached_property
    def class_table(self):
        g = self.genus
        if g == 0:
            return [[{}]]
        q = self.p
        divs = self.effective_divisors(g)
        classes = []
        multi = []
        for D in divs:
            l = self.ell(D)
            if l == 1:
                classes.append([D])
                continue
            for cl in multi:
                if cl[0] == l and self.equivalent(D, cl[1][0]):
                    cl[1].append(D)
                    break
            else:
                members = [D]
                multi.append((l, members))
                classes.append(members)
        for l, members in multi:
            if len(members) != (q**l - 1) // (q - 1):
                raise ConsistencyError(
                    f"class with l(D) = {l} has {len(members)} effective members"
                )
        if len(classes) > MAX_CLASS_NUMBER:
            raise CapabilityError(f"class number exceeds {MAX_CLASS_NUMBER}")
        return classes

    def class_number(self):
        return len(self.class_table)

    def two_torsion_count(self):
        if self.genus == 0:
            return 1
        classes = self.class_table
        D0 = classes[0][0]
        count = 0
        for cl in classes:
            R = cl[0]
            diff = {}
            for w, n in R.items():
                diff[w] = diff.get(w, 0) + 2 * n
            for w, n in D0.items():
                diff[w] = diff.get(w, 0) - 2 * n
            if self.ell(diff) > 0:
                count += 1
        return count

    def two_rank(self):
        c = self.two_torsion_count()
        r = int(round(math.log2(c)))
        if 2**r != c:
            raise ConsistencyError(f"{c} two-torsion classes is not a power of 2")
        return r


def _valuation(f, v):
    n = 0
    while True:
        q, r = divmod(f, v.pi)
        if not r.is_zero():
            return n
        f, n = q, n + 1


def two_rank_bruteforce(E):
    """Exact ``dim Pic^0(C)(GF(q))[2]`` for a tiny descent curve."""
    J = DescentJacobian(E)
    return J.two_rank()


def riemann_roch_space(E, divisor):
    return DescentJacobian(E).riemann_roch_space(divisor)


__all__ = [
    "CurvePlace",
    "DescentJacobian",
    "nullspace_mod_p",
    "places_over",
    "riemann_roch_space",
    "smallest_irreducible",
    "two_rank_bruteforce",
]
