"""Exact arithmetic: fields, polynomials, factorization and local analysis."""

from .factor import factor_univariate, primitive_modulus, roots, smallest_irreducible
from .fields import QQ, ExtensionField, PrimeField, RationalField
from .local import LocalFactorization, local_factor_cubic
from .parse import parse_poly
from .poly import Poly
from .residue import Certificate, residue_cubic_root_count, residue_is_square

__all__ = [
    "QQ",
    "Certificate",
    "ExtensionField",
    "LocalFactorization",
    "Poly",
    "PrimeField",
    "RationalField",
    "factor_univariate",
    "local_factor_cubic",
    "parse_poly",
    "primitive_modulus",
    "residue_cubic_root_count",
    "residue_is_square",
    "roots",
    "smallest_irreducible",
]
