import os

import pytest

from ellrank.algebra import QQ, ExtensionField, PrimeField, parse_poly
from ellrank.places import EllipticSurfaceModel

CURVES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "curves")


def model(K, a, b):
    return EllipticSurfaceModel(K, parse_poly(a, K), parse_poly(b, K))


def poly(text, K=QQ, var="t"):
    return parse_poly(text, K, var=var)


@pytest.fixture
def F5():
    return PrimeField(5)


@pytest.fixture
def F7():
    return PrimeField(7)


@pytest.fixture
def Q_sqrt2():
    return ExtensionField(QQ, poly("y^2 - 2", var="y").coeffs, name="y")


@pytest.fixture
def tomasz():
    return model(QQ, "0", "t^5 + 1")


@pytest.fixture
def tomasz7():
    return model(QQ, "0", "t^7 + 1")
