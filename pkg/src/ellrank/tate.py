"""Tate's algorithm at a place of k(t), and the global reduction summary.

The local model is ``y^2 = x^3 + a2 x^2 + a4 x + a6`` over ``k_v[s]``
(``a1 = a3 = 0``; characteristic at least 5 lets us keep it that way, since
no ``y``-translation is ever needed).  Steps that depend on the residue
field (split multiplicative, IV and IV* component rationality, the I0* and
In* component counts) go through the certified tests in
:mod:`ellrank.algebra.residue`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .algebra.poly import Poly
from .algebra.residue import residue_cubic_root_count, residue_is_square
from .errors import ConsistencyError, Undetermined
from .places import PlaceDivisor, bad_places

FAMILIES = ("I", "I*", "II", "III", "IV", "IV*", "III*", "II*")


@dataclass(frozen=True)
class KodairaType:
    family: str
    n: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown Kodaira family {self.family!r}")

    def __str__(self):
        if self.family == "I":
            return f"I{self.n}"
        if self.family == "I*":
            return f"I{self.n}*"
        return self.family

    @property
    def additive(self):
        return self.family != "I"

    def components(self):
        """Number of geometric irreducible components of the fiber."""
        return {
            "I": max(self.n, 1),
            "I*": self.n + 5,
            "II": 1,
            "III": 2,
            "IV": 3,
            "IV*": 7,
            "III*": 8,
            "II*": 9,
        }[self.family]

    def geometric_tamagawa(self):
        if self.family == "I":
            return max(self.n, 1)
        if self.family == "I*":
            return 4
        return {"II": 1, "II*": 1, "III": 2, "III*": 2, "IV": 3, "IV*": 3}[self.family]

    def two_torsion_size(self):
        """Size of the 2-torsion of the identity-component quotient picture, 4/2/1."""
        if self.family in ("I", "I*"):
            return 4 if self.n % 2 == 0 else 2
        if self.family in ("III", "III*"):
            return 2
        return 1

    @classmethod
    def parse(cls, text):
        text = text.strip()
        if text in FAMILIES and text not in ("I", "I*"):
            return cls(text)
        star = text.endswith("*")
        body = text[:-1] if star else text
        if not body.startswith("I") or not body[1:].isdigit():
            raise ValueError(f"cannot parse Kodaira symbol {text!r}")
        return cls("I*" if star else "I", int(body[1:]))


@dataclass(frozen=True)
class LocalReductionData:
    place: object
    kodaira: KodairaType
    f_v: int
    c_v: int
    c_v_geom: int
    m_v: int
    delta_min_v: int
    split: bool | None = None
    certificates: tuple = field(default=(), compare=False)

    @property
    def full_two_rational(self):
        return self.kodaira.family == "I*" and self.kodaira.n % 2 == 0 and self.c_v == 4

    @property
    def eps_arith(self):
        return local_correction(self, 2)

    @property
    def eps_geom(self):
        if self.kodaira.family == "I*" and self.kodaira.n % 2 == 0:
            return 2
        return 1 if self.c_v_geom % 2 == 0 else 0

    @property
    def degree(self):
        return self.place.degree


def local_correction(d, p):
    """``dim H^0(k_v, Phi_v / p Phi_v)``: 0, 1 or 2."""
    if p == 2:
        if d.full_two_rational:
            return 2
        return 1 if d.c_v % 2 == 0 else 0
    return 1 if d.c_v % p == 0 else 0


# --- the algorithm ---------------------------------------------------------

def _v(a):
    return math.inf if a.is_zero() else a.valuation()


class _Model:
    """``a2, a4, a6`` as polynomials in ``s`` over the residue field."""

    def __init__(self, a2, a4, a6):
        self.a2, self.a4, self.a6 = a2, a4, a6

    def translate_x(self, r):
        a2, a4, a6 = self.a2, self.a4, self.a6
        r2 = r * r
        self.a6 = a6 + a4 * r + a2 * r2 + r2 * r
        self.a4 = a4 + a2 * r * 2 + r2 * 3
        self.a2 = a2 + r * 3

    def b8(self):
        return self.a2 * self.a6 * 4 - self.a4 * self.a4

    def disc(self):
        b2, b4, b6, b8 = self.a2 * 4, self.a4 * 2, self.a6 * 4, self.b8()
        return -(b2 * b2 * b8) - b4 * b4 * b4 * 8 - b6 * b6 * 27 + b2 * b4 * b6 * 9

    def rescale(self):
        self.a2 = self.a2.shift_down(2)
        self.a4 = self.a4.shift_down(4)
        self.a6 = self.a6.shift_down(6)


def _double_root(f):
    """The repeated root of ``f``; it lies in the coefficient field."""
    g = f.gcd(f.derivative())
    d = g.degree()
    if d < 1:
        raise ValueError("polynomial has no repeated root")
    K = f.field
    return K.div(K.neg(g.coeff(d - 1)), K.from_int(d))


class _Tests:
    """Residue-field tests with the certificates they produced."""

    def __init__(self, K, place):
        self.K = K
        self.place = place
        self.log = []

    def is_square(self, a, what):
        try:
            cert = residue_is_square(a, self.K)
        except Undetermined as exc:
            raise Undetermined(f"at place {self.place.label()}: {what}: {exc}") from exc
        self.log.append(f"{what}: {'square' if cert.value else 'non-square'} ({cert.describe()})")
        return cert.value

    def root_count(self, f, what):
        try:
            cert = residue_cubic_root_count(f, self.K)
        except Undetermined as exc:
            raise Undetermined(f"at place {self.place.label()}: {what}: {exc}") from exc
        self.log.append(f"{what}: {cert.value} roots ({cert.describe()})")
        return cert.value


def tate_from_model(K, A, B, place=None):
    """Run Tate's algorithm on ``y^2 = x^3 + A(s) x + B(s)`` over ``K[s]``.

    Returns ``(kodaira, f_v, c_v, delta_min_v, split, log)``.
    """
    M = _Model(Poly(K, ()), A, B)
    tests = _Tests(K, place if place is not None else _Anon())
    rescales = 0
    delta_model = _v(M.disc())
    while True:
        vd = _v(M.disc())
        if vd == 0:
            return KodairaType("I", 0), 0, 1, 0, None, tests.log
        # move the singular point of the reduction to x = 0
        fbar = Poly(K, [M.a6.coeff(0), M.a4.coeff(0), M.a2.coeff(0), K.one])
        r = _double_root(fbar)
        if not K.is_zero(r):
            M.translate_x(Poly(K, [r]))
        if _v(M.a2) == 0:
            n = vd
            split = None
            c = 1
            if n >= 3:
                split = tests.is_square(M.a2.coeff(0), f"I{n} tangent slopes split")
                c = n if split else (2 if n % 2 == 0 else 1)
            elif n == 2:
                c = 2
            return KodairaType("I", n), 1, c, vd, split, tests.log
        if _v(M.a6) < 2:
            return KodairaType("II"), 2, 1, vd, None, tests.log
        if _v(M.b8()) < 3:
            return KodairaType("III"), 2, 2, vd, None, tests.log
        if _v(M.a6) < 3:
            rational = tests.is_square(M.a6.coeff(2), "IV component rationality")
            return KodairaType("IV"), 2, 3 if rational else 1, vd, None, tests.log
        P = Poly(K, [M.a6.coeff(3), M.a4.coeff(2), M.a2.coeff(1), K.one])
        g = P.gcd(P.derivative())
        if g.degree() == 0:
            count = tests.root_count(P, "I0* roots")
            return KodairaType("I*", 0), 2, 1 + count, vd, None, tests.log
        T0 = _double_root(P)
        if g.degree() == 1:
            M.translate_x(Poly(K, [K.zero, T0]))
            return _in_star(M, K, tests, vd)
        # triple root
        if not K.is_zero(T0):
            M.translate_x(Poly(K, [K.zero, T0]))
        if _v(M.a6) < 5:
            rational = tests.is_square(M.a6.coeff(4), "IV* component rationality")
            return KodairaType("IV*"), 2, 3 if rational else 1, vd, None, tests.log
        if _v(M.a4) < 4:
            return KodairaType("III*"), 2, 2, vd, None, tests.log
        if _v(M.a6) < 6:
            return KodairaType("II*"), 2, 1, vd, None, tests.log
        M.rescale()
        rescales += 1
        if rescales > delta_model // 12:
            raise ConsistencyError("Tate's algorithm rescaled more often than the discriminant allows")


def _in_star(M, K, tests, vd):
    """The I_n* sub-loop (double root of the auxiliary cubic moved to 0)."""
    m = 1
    mx_exp, my_exp = 2, 2
    while True:
        # Y^2 - xa6: the y-step
        xa6 = M.a6.coeff(mx_exp + my_exp)
        if not K.is_zero(xa6):
            rational = tests.is_square(xa6, f"I{m}* far components")
            return KodairaType("I*", m), 2, 4 if rational else 2, vd, None, tests.log
        my_exp += 1
        m += 1
        # xa2 X^2 + xa4 X + xa6: the x-step
        xa2 = M.a2.coeff(1)
        xa4 = M.a4.coeff(1 + mx_exp)
        xa6 = M.a6.coeff(mx_exp + my_exp)
        disc = K.sub(K.mul(xa4, xa4), K.mul(K.from_int(4), K.mul(xa2, xa6)))
        if not K.is_zero(disc):
            rational = tests.is_square(disc, f"I{m}* far components")
            return KodairaType("I*", m), 2, 4 if rational else 2, vd, None, tests.log
        X0 = K.div(K.neg(xa4), K.mul(K.from_int(2), xa2))
        if not K.is_zero(X0):
            M.translate_x(Poly.monomial(K, mx_exp, X0))
        mx_exp += 1
        m += 1
        if m > vd:
            raise ConsistencyError("I_n* loop did not terminate")


class _Anon:
    def label(self):
        return "?"


def tate_local(E, v):
    """Local reduction data of ``E`` at the place ``v``."""
    A, B = E.local_model(v)
    K = v.residue_field
    kod, f_v, c_v, vd_model, split, log = tate_from_model(K, A, B, v)
    m_v = kod.components() if kod != KodairaType("I", 0) else 1
    delta = f_v + m_v - 1 if f_v else 0
    expected = E.minimal_discriminant_valuation(v)
    if delta != expected:
        raise ConsistencyError(
            f"at {v.label()}: Ogg's formula gives {delta}, minimal discriminant has {expected}"
        )
    c_geom = kod.geometric_tamagawa()
    if c_geom % c_v:
        raise ConsistencyError(f"at {v.label()}: c_v = {c_v} does not divide {c_geom}")
    return LocalReductionData(v, kod, f_v, c_v, c_geom, m_v, delta, split, tuple(log))


@dataclass(frozen=True)
class GlobalReductionSummary:
    sigma: tuple
    p: int
    conductor: PlaceDivisor
    deg_f: int
    delta_min_deg: int
    chi: int
    p_g: int
    genus_base: int = 0

    def _closed(self, pred):
        return sum(1 for d in self.sigma if pred(d))

    def _weighted(self, pred):
        return sum(d.degree for d in self.sigma if pred(d))

    # closed-point counts (each place once)
    def count_p_divides_c(self, p=None):
        p = self.p if p is None else p
        return self._closed(lambda d: d.c_v % p == 0)

    def count_full_I2n_star(self):
        return self._closed(lambda d: d.full_two_rational)

    @property
    def eps_sum_arith(self):
        return sum(d.eps_arith for d in self.sigma)

    # degree-weighted variants (each place counted deg(v) times)
    def count_p_divides_c_weighted(self, p=None):
        p = self.p if p is None else p
        return self._weighted(lambda d: d.c_v % p == 0)

    def count_full_I2n_star_weighted(self):
        return self._weighted(lambda d: d.full_two_rational)

    @property
    def eps_sum_arith_weighted(self):
        return sum(d.eps_arith * d.degree for d in self.sigma)

    # geometric counts, over the algebraic closure
    def count_p_divides_c_geom(self, p=None):
        p = self.p if p is None else p
        return self._weighted(lambda d: d.c_v_geom % p == 0)

    def count_I2n_star_geom(self):
        return self._weighted(lambda d: d.kodaira.family == "I*" and d.kodaira.n % 2 == 0)

    @property
    def eps_sum_geom(self):
        return sum(d.eps_geom * d.degree for d in self.sigma)


def global_summary(E, p=2, sigma=None):
    if sigma is None:
        sigma = [tate_local(E, v) for v in bad_places(E)]
    sigma = tuple(sigma)
    conductor = PlaceDivisor({d.place: d.f_v for d in sigma})
    deg_f = conductor.degree()
    delta = sum(d.delta_min_v * d.degree for d in sigma)
    if delta % 12:
        raise ConsistencyError(f"minimal discriminant degree {delta} is not divisible by 12")
    chi = delta // 12
    extra = sum((d.m_v - 1) * d.degree for d in sigma)
    if deg_f + extra != 12 * chi:
        raise ConsistencyError("conductor plus component count does not equal 12 chi")
    return GlobalReductionSummary(sigma, p, conductor, deg_f, delta, chi, chi - 1)


__all__ = [
    "GlobalReductionSummary",
    "KodairaType",
    "LocalReductionData",
    "global_summary",
    "local_correction",
    "tate_from_model",
    "tate_local",
]
