"""The 2-descent curve ``C: x^3 + A(t) x + B(t) = 0`` as a triple cover of the line.

C is handled through its function field ``k(t)[x]/(cubic)``: the
ramification at a place comes from the Newton polygon of the local cubic,
and is cross-checked against the prediction from the Kodaira type.

Geometric integrality of C is the same as the cubic having no root in
``kbar(t)``.  Such a root would be a polynomial in ``t`` of bounded degree,
so it is searched for by lifting the roots of a good specialization to
power series and testing the truncation exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra.factor import roots_finite, roots_rational, smallest_irreducible, squarefree_part
from .algebra.fields import ExtensionField, PrimeField, RationalField
from .algebra.local import local_factor_cubic
from .algebra.poly import Poly
from .errors import ConsistencyError, HypothesisViolated, Undetermined

from .tate import global_summary

HYPOTHESIS_MESSAGE = "rank-bound hypothesis violated: E[2] not irreducible over kbar(t)"
CERTIFICATE_PRIME_BUDGET = 25

RAMIFICATION_BY_TWO_TORSION = {4: 0, 2: 1, 1: 2}


@dataclass(frozen=True)
class IntegralityCertificate:
    method: str
    prime: int | None = None
    fields_checked: tuple = ()
    tried_primes: tuple = ()

    def describe(self):
        fields = ", ".join(self.fields_checked)
        if self.prime is None:
            return f"{self.method}: no root over {fields}"
        return f"{self.method} mod {self.prime}: no root over {fields}"


@dataclass(frozen=True)
class DescentCurveData:
    A: Poly
    B: Poly
    certificate: IntegralityCertificate
    ram_degrees: dict
    ram_table: dict
    factorizations: dict = field(compare=False)
    deg_R: int = 0
    genus: int = 0

    def cubic_text(self):
        return f"x^3 + ({self.A.format()})*x + ({self.B.format()})"


# --- local data ------------------------------------------------------------

def local_cubic(E, v):
    """Coefficients ``(c0, c1, c2, c3)`` of the cubic over the completion at ``v``.

    At infinity this is ``X^3 + A_inf X + B_inf`` with ``X = s^(2n) x``.
    """
    A, B = E.local_model(v)
    K = A.field if not A.is_zero() else B.field
    return (B, A, Poly(K, ()), Poly(K, [K.one]))


def local_factorization(E, v, precision=None):
    return local_factor_cubic(local_cubic(E, v), precision)


def ramification_profile(E, sigma):
    """``{place: deg R_v}`` from the Kodaira table and from Newton polygons.

    Raises :class:`ConsistencyError` if the two disagree anywhere or if
    ``deg R_v != f_v - eps_geom``.
    """
    table, newton, facs = {}, {}, {}
    for d in sigma:
        v = d.place
        by_type = RAMIFICATION_BY_TWO_TORSION[d.kodaira.two_torsion_size()]
        loc = local_factorization(E, v)
        by_newton = loc.ramification()
        if by_type != by_newton:
            raise ConsistencyError(
                f"at {v.label()} ({d.kodaira}): table gives deg R_v = {by_type}, "
                f"Newton polygon gives {by_newton}"
            )
        if by_type != d.f_v - d.eps_geom:
            raise ConsistencyError(f"at {v.label()}: deg R_v != f_v - eps_v")
        table[v], newton[v], facs[v] = by_type, by_newton, loc
    return table, newton, facs


# --- geometric integrality ---------------------------------------------------

def _root_degree_bound(A, B):
    bound = 0
    if not A.is_zero():
        bound = max(bound, -(-A.degree() // 2))
    if not B.is_zero():
        bound = max(bound, -(-B.degree() // 3))
    return bound


def _lift_root(A, B, t0, x0, n):
    """Power series root ``x(u)`` of ``x^3 + A(t0+u) x + B(t0+u)`` mod ``u^n``."""
    L = A.field
    As, Bs = A.taylor_shift(t0), B.taylor_shift(t0)
    dinv = L.inv(L.add(L.mul(L.from_int(3), L.mul(x0, x0)), As.coeff(0)))
    x = Poly(L, [x0])
    for _ in range(n):
        F = (x * x * x + As * x + Bs).truncate(n)
        if F.is_zero():
            break
        x = (x - F.scale(dinv)).truncate(n)
    return x


def _specialization_points(L):
    if isinstance(L, RationalField):
        for k in itertools.count():
            yield Fraction((k + 1) // 2 * (1 if k % 2 else -1))
    else:
        yield from L.elements()


def polynomial_root_search(A, B):
    """Roots of ``x^3 + A x + B`` lying in ``L[t]``, ``L`` the coefficient field.

    Complete: any polynomial root specializes to a root at a point where the
    discriminant does not vanish, and is recovered from its expansion there.
    """
    L = A.field
    D = A**3 * 4 + B**2 * 27
    bound = _root_degree_bound(A, B)
    for t0 in _specialization_points(L):
        if not L.is_zero(D(t0)):
            break
    else:
        raise Undetermined(f"no point of {L!r} avoids the discriminant")
    c = Poly(L, [B(t0), A(t0), L.zero, L.one])
    x0s = roots_rational(c) if isinstance(L, RationalField) else roots_finite(c)
    found = []
    for x0 in x0s:
        r = _lift_root(A, B, t0, x0, bound + 1).taylor_shift(L.neg(t0))
        if (r * r * r + A * r + B).is_zero():
            found.append(r)
    return found


def _extend(K, d):
    L = ExtensionField(K, smallest_irreducible(K, d).coeffs, name="z")
    return L, (lambda f: f.map_coeffs(L.embed, L))


def _finite_integrality(A, B, label=""):
    K = A.field
    if polynomial_root_search(A, B):
        raise HypothesisViolated(f"{HYPOTHESIS_MESSAGE} (root in {label or repr(K)}[t])")
    checked = [f"GF({K.order})"]
    for d in (2, 3):
        L, up = _extend(K, d)
        if polynomial_root_search(up(A), up(B)):
            raise HypothesisViolated(f"{HYPOTHESIS_MESSAGE} (root over GF({K.order}^{d}))")
        checked.append(f"GF({K.order}^{d})")
    return tuple(checked)


def _reduce_mod(f, ell):
    F = PrimeField(ell)
    if any(c.denominator % ell == 0 for c in f.coeffs):
        return None
    return f.map_coeffs(F.coerce, F)


def good_prime_for_cubic(A, B, ell):
    """Reductions of ``A, B`` mod ``ell`` if the branch data survive, else None.

    Requires integrality, and that ``4A^3 + 27B^2`` and its radical keep
    their degrees.
    """
    if ell in (2, 3):
        return None
    Ar, Br = _reduce_mod(A, ell), _reduce_mod(B, ell)
    if Ar is None or Br is None:
        return None
    D = A**3 * 4 + B**2 * 27
    Dr = Ar**3 * 4 + Br**2 * 27
    if Dr.degree() != D.degree():
        return None
    if D.degree() > 0 and squarefree_part(Dr).degree() != squarefree_part(D).degree():
        return None
    return Ar, Br


def geometric_integrality_certificate(E, budget=CERTIFICATE_PRIME_BUDGET):
    A, B = E.A, E.B
    K = E.base
    if A.degree() <= 0 and B.degree() <= 0:
        raise HypothesisViolated(f"{HYPOTHESIS_MESSAGE} (constant curve)")
    if K.is_finite:
        return IntegralityCertificate("finite-field root search", None, _finite_integrality(A, B))
    if polynomial_root_search(A, B):
        raise HypothesisViolated(f"{HYPOTHESIS_MESSAGE} (root in QQ[t])")
    from sympy import nextprime

    tried = []
    ell = 5
    while len(tried) < budget:
        red = good_prime_for_cubic(A, B, ell)
        if red is not None:
            tried.append(ell)
            try:
                checked = _finite_integrality(*red)
            except HypothesisViolated:
                pass
            else:
                return IntegralityCertificate("good reduction", ell, checked, tuple(tried))
        ell = int(nextprime(ell))
    raise Undetermined(
        f"geometric irreducibility undecided: reducible mod every tried prime {tried}"
    )


def build_descent_curve(E, summary=None):
    cert = geometric_integrality_certificate(E)
    if summary is None:
        summary = global_summary(E)
    table, newton, facs = ramification_profile(E, summary.sigma)
    deg_R = sum(v.degree * r for v, r in newton.items())
    if deg_R != summary.deg_f - summary.eps_sum_geom:
        raise ConsistencyError("deg R differs from deg f - sum eps_geom")
    if deg_R % 2:
        raise ConsistencyError(f"ramification degree {deg_R} is odd")
    genus = deg_R // 2 - 2
    if genus < 0:
        raise ConsistencyError(f"negative genus from deg R = {deg_R}")
    return DescentCurveData(E.A, E.B, cert, newton, table, facs, deg_R, genus)

