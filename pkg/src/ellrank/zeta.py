"""Zeta function of the descent curve over a finite field, and 2-torsion bounds.

``N_i`` (degree-1 places over ``GF(q^i)``) is the sum of fiber root counts
over the affine points where the cubic stays separable, plus the places
above the discriminant and infinity read off from local factorizations.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .algebra.factor import primitive_modulus
from .algebra.fields import ExtensionField, PrimeField
from .descent import build_descent_curve, good_prime_for_cubic, local_factorization
from .errors import CapabilityError, ConsistencyError, EllRankError
from .kernels import FieldTables
from .places import EllipticSurfaceModel, Place

DEFAULT_WORK_BUDGET = 10**8
ROOT_TOLERANCE = 1e-9


def work_budget():
    env = os.environ.get("ELLRANK_WORK_BUDGET")
    return int(float(env)) if env else DEFAULT_WORK_BUDGET


@lru_cache(maxsize=16)
def _tables(cls, p, n):
    M = primitive_modulus(p, n)
    return cls(p, n, [int(c) for c in M.coeffs[:-1]])


def field_tables(p, n, cls=None):
    return _tables(cls or FieldTables, p, n)


def _prime_and_degree(K):
    if isinstance(K, PrimeField):
        return K.p, 1
    if isinstance(K, ExtensionField) and isinstance(K.base, PrimeField):
        return K.characteristic, K.n
    raise CapabilityError(f"point counting needs GF(p) or GF(p^m) over GF(p), got {K!r}")


class _Embedding:
    """Maps elements of the base field ``GF(p^m)`` to logs in ``GF(p^(m i))``."""

    def __init__(self, K, T):
        self.K = K
        self.T = T
        p, m = _prime_and_degree(K)
        self.m = m
        if m > 1:
            q = p**m
            step = T.N1 // (q - 1)
            mu = [T.from_encoded(int(c)) for c in K.modulus]
            for j in range(q - 1):
                rho = j * step
                acc = T.ZERO
                for c in reversed(mu):
                    acc = T.add(T.mul(acc, rho), c)
                if acc == T.ZERO:
                    self.rho = rho
                    break
            else:
                raise ConsistencyError("modulus of the base field has no root in the extension")

    def __call__(self, c):
        T = self.T
        if self.m == 1:
            return T.from_encoded(int(c))
        acc = T.ZERO
        for j, cj in enumerate(c):
            term = T.mul(T.from_encoded(int(cj)), (j * self.rho) % T.N1 if j else 0)
            acc = T.add(acc, term)
        return acc


class PointCounter:
    """Point counts of the descent curve of ``E`` over extensions of its base field."""

    def __init__(self, E, tables_cls=None):
        if not E.base.is_finite:
            raise EllRankError("point counting needs a finite base field")
        self.E = E
        self.K = E.base
        self.p, self.m = _prime_and_degree(self.K)
        self.q = self.p**self.m
        self.tables_cls = tables_cls
        self._places = None
        self._local = {}

    def _disc_places(self):
        if self._places is None:
            self._places = self.E.finite_discriminant_places()
        return self._places

    def local(self, v):
        if v not in self._local:
            self._local[v] = local_factorization(self.E, v)
        return self._local[v]

    def work(self, i):
        return self.q**i * (max(self.E.A.degree(), 0) + max(self.E.B.degree(), 0) + 2)

    def affine_counts(self, i, workers=1):
        """``(roots over separable fibers, number of singular t)`` over ``GF(q^i)``."""
        need = self.work(i)
        budget = work_budget()
        if need > budget:
            raise CapabilityError(
                f"counting over GF({self.q}^{i}) needs a work budget of {need} "
                f"(current {budget}; set ELLRANK_WORK_BUDGET)"
            )
        T = field_tables(self.p, self.m * i, self.tables_cls)
        emb = _Embedding(self.K, T)
        A = [emb(c) for c in self.E.A.coeffs]
        B = [emb(c) for c in self.E.B.coeffs]
        N1 = T.N1
        workers = max(1, int(workers))
        if workers == 1:
            return T.count_range(A, B, 0, N1, True)
        bounds = [N1 * j // workers for j in range(workers + 1)]
        jobs = [(bounds[j], bounds[j + 1], j == 0) for j in range(workers)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda job: T.count_range(A, B, *job), jobs))
        return sum(r for r, _ in parts), sum(s for _, s in parts)

    def count(self, i, workers=1):
        roots, singular = self.affine_counts(i, workers)
        expected = sum(v.degree for v in self._disc_places() if i % v.degree == 0)
        if singular != expected:
            raise ConsistencyError(
                f"{singular} singular fibers over GF({self.q}^{i}), expected {expected}"
            )
        total = roots
        for v in self._disc_places() + [Place(self.K)]:
            d = v.degree
            if i % d:
                continue
            total += sum(d * f for e, f in self.local(v) if i % (d * f) == 0)
        return total


def count_points(E, i, workers=1, tables_cls=None):
    """``N_i``: number of degree-1 places of the descent curve over ``GF(q^i)``."""
    return PointCounter(E, tables_cls).count(i, workers)


@dataclass(frozen=True)
class LPolynomial:
    coeffs: tuple
    q: int
    g: int

    def __call__(self, T):
        return sum(a * T**k for k, a in enumerate(self.coeffs))

    def class_number(self):
        return self(1)

    def point_counts(self, n):
        """``N_1..N_n`` implied by this polynomial (Newton's identities run forward)."""
        a = list(self.coeffs) + [0] * max(0, n + 1 - len(self.coeffs))
        s = []
        for k in range(1, n + 1):
            # k a_k = sum_{i=1..k} s_i a_{k-i}
            val = k * a[k] - sum(s[i - 1] * a[k - i] for i in range(1, k))
            s.append(val)
        return [s_i + self.q**i + 1 for i, s_i in enumerate(s, start=1)]

    def reciprocal_root_moduli(self, dps=50):
        import mpmath

        if self.g == 0:
            return []
        with mpmath.workdps(dps):
            # coefficients read high-to-low give T^(2g) P(1/T), whose roots
            # are the reciprocal roots of P
            roots = mpmath.polyroots(list(self.coeffs), maxsteps=400, extraprec=4 * dps)
            return [float(abs(r)) for r in roots]

    def check(self):
        q, g, a = self.q, self.g, self.coeffs
        if len(a) != 2 * g + 1 or a[0] != 1:
            raise ConsistencyError("L-polynomial has the wrong shape")
        for i in range(g + 1):
            if a[2 * g - i] != q ** (g - i) * a[i]:
                raise ConsistencyError("functional equation fails")
        if self.class_number() <= 0:
            raise ConsistencyError("P(1) must be positive")
        target = q**0.5
        for r in self.reciprocal_root_moduli():
            if abs(r - target) > ROOT_TOLERANCE * max(1.0, target):
                raise ConsistencyError(f"reciprocal root of modulus {r}, expected {target}")
        return True

    def format(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if k == 0 else f"{c}*T" if k == 1 else f"{c}*T^{k}")
        return " + ".join(terms).replace("+ -", "- ")


def l_polynomial(counts, q, g):
    """Reconstruct ``P(T)`` from ``N_1..N_g``."""
    counts = list(counts)
    if len(counts) != g:
        raise ValueError(f"need exactly {g} point counts, got {len(counts)}")
    a = [1] + [0] * (2 * g)
    s = [N - q**i - 1 for i, N in enumerate(counts, start=1)]
    for k in range(1, g + 1):
        num = sum(s[i - 1] * a[k - i] for i in range(1, k + 1))
        if num % k:
            raise ConsistencyError("point counts are not consistent with an L-polynomial")
        a[k] = num // k
    for i in range(g):
        a[2 * g - i] = q ** (g - i) * a[i]
    P = LPolynomial(tuple(a), q, g)
    P.check()
    return P


def zeta_of(E, g=None, workers=1):
    """``(counts, P)`` for the descent curve of ``E`` over its finite base field."""
    if g is None:
        g = build_descent_curve(E).genus
    pc = PointCounter(E)
    counts = [pc.count(i, workers) for i in range(1, g + 1)]
    return counts, l_polynomial(counts, pc.q, g)


@dataclass(frozen=True)
class TwoTorsionBound:
    lower: int
    upper: int
    notes: tuple = field(default=())
    prime: int | None = None

    @property
    def exact(self):
        return self.lower == self.upper

    def __post_init__(self):
        if not 0 <= self.lower <= self.upper:
            raise ConsistencyError(f"empty torsion interval [{self.lower}, {self.upper}]")


def _v2(n):
    n = abs(n)
    k = 0
    while n and n % 2 == 0:
        n //= 2
        k += 1
    return k


def _multiplicity_of_one_mod2(coeffs):
    c = [x % 2 for x in coeffs]
    k = 0
    while any(c):
        # synthetic division by (T + 1) over GF(2); remainder is c(1)
        if sum(c) % 2:
            break
        out = [0] * (len(c) - 1)
        acc = 0
        for j in range(len(c) - 1, 0, -1):
            acc = (c[j] + acc) % 2
            out[j - 1] = acc
        c = out
        while c and c[-1] == 0:
            c.pop()
        k += 1
    return k


def two_torsion_bounds(P):
    h = P.class_number()
    upper = min(_v2(h), _multiplicity_of_one_mod2(P.coeffs))
    lower = 1 if h % 2 == 0 else 0
    notes = (f"P(1) = {h}", f"v2(P(1)) = {_v2(h)}",
             f"multiplicity of T+1 in P mod 2 = {_multiplicity_of_one_mod2(P.coeffs)}")
    return TwoTorsionBound(lower, upper, notes)


def reduce_model(E, ell):
    """``E mod ell`` when ``ell`` is a certified good prime for the descent curve, else None."""
    if ell in (2, 3):
        return None
    red = good_prime_for_cubic(E.A, E.B, ell)
    if red is None:
        return None
    A, B = red
    if A.degree() != E.A.degree() or B.degree() != E.B.degree():
        return None
    return EllipticSurfaceModel(A.field, A, B)


def torsion_upper_over_Q(E, primes, genus=None):
    """Upper bound for ``dim Pic(C)[2]`` over QQ from reductions at good primes."""
    if genus is None:
        genus = build_descent_curve(E).genus
    if genus == 0:
        return TwoTorsionBound(0, 0, ("genus 0",))
    best = None
    notes = []
    for ell in primes:
        if ell == 3:
            notes.append("l=3: wild for a triple cover, only usable by assertion; skipped")
            continue
        Er = reduce_model(E, ell)
        if Er is None:
            notes.append(f"l={ell}: not a good prime")
            continue
        try:
            gr = build_descent_curve(Er).genus
        except EllRankError as exc:
            notes.append(f"l={ell}: reduction rejected ({exc})")
            continue
        if gr != genus:
            notes.append(f"l={ell}: genus drops to {gr}")
            continue
        counts, P = zeta_of(Er, genus)
        b = two_torsion_bounds(P)
        notes.append(f"l={ell}: P(1) = {P.class_number()}, upper {b.upper}")
        if best is None or b.upper < best[1]:
            best = (ell, b.upper)
    if best is None:
        raise EllRankError(
            "no prime certifies good reduction; supply an asserted good prime or an "
            "external torsion dimension"
        )
    return TwoTorsionBound(0, best[1], tuple(notes), prime=best[0])
