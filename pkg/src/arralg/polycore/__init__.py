"""Coefficient fields, sparse polynomials, parsing and linear coordinate changes."""

from .field import GF, MAX_PRIME, QQ, FieldSpec
from .polynomial import (
    UNDEFINED,
    Monomial,
    default_names,
    Polynomial,
    PolynomialRing,
    degrevlex_key,
    euler_combination,
    gradient,
    partial_derivative,
    poly_arith,
    product,
)
from .parse import PolynomialSyntaxError, parse_polynomial
from .changevars import LinearChangeOfVariables, change_of_variables, jacobian_transport_check

__all__ = [
    "FieldSpec", "QQ", "GF", "MAX_PRIME",
    "Polynomial", "PolynomialRing", "Monomial", "UNDEFINED", "degrevlex_key",
    "partial_derivative", "gradient", "euler_combination", "poly_arith", "product",
    "parse_polynomial", "PolynomialSyntaxError",
    "LinearChangeOfVariables", "change_of_variables", "jacobian_transport_check",
]
