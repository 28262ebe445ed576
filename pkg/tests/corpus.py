"""Deterministic random corpus of curves for the property and acceptance tests."""

import random
from fractions import Fraction

from ellrank.algebra import QQ, Poly, PrimeField
from ellrank.descent import build_descent_curve
from ellrank.errors import EllRankError
from ellrank.places import EllipticSurfaceModel
from ellrank.tate import global_summary

MAX_DEGREE = 6


def random_model(rng, K):
    """``y^2 = x^3 + A x + B`` with ``deg A, deg B <= 6`` and B nonconstant or A nonconstant."""
    if K is QQ:
        coeff = lambda: Fraction(rng.randint(-3, 3))
    else:
        coeff = lambda: rng.randrange(K.p)
    da = rng.randint(-1, MAX_DEGREE)
    db = rng.randint(0, MAX_DEGREE)
    A = Poly(K, [coeff() for _ in range(da + 1)]) if da >= 0 else Poly(K, ())
    B = Poly(K, [coeff() for _ in range(db + 1)])
    return A, B


def build_corpus(per_field=10, seed=20240611):
    """``[(E, summary, descent)]`` for curves passing the integrality certificate."""
    rng = random.Random(seed)
    out = []
    for K in (PrimeField(5), PrimeField(7), QQ):
        found = 0
        while found < per_field:
            A, B = random_model(rng, K)
            if max(A.degree(), B.degree()) < 1:
                continue
            try:
                E = EllipticSurfaceModel(K, A, B)
                s = global_summary(E)
                c = build_descent_curve(E, s)
            except EllRankError:
                continue
            out.append((E, s, c))
            found += 1
    return out
