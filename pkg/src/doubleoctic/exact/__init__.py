"""Exact arithmetic substrate: scalars, polynomials, linear algebra."""

from .matrix import ExactMatrix, determinant, inverse, kernel_basis, rank, rref, solve
from .poly import ZERO_DEGREE, Poly, divisors, rational_roots
from .scalar import (
    Quad,
    Scalar,
    as_scalar,
    conjugate,
    field_of,
    is_rational,
    parse_scalar,
    quad,
    render_scalar,
    sort_key,
    sqrt_of_integer,
    sqrt_scalar,
)

__all__ = [
    "ExactMatrix",
    "Poly",
    "Quad",
    "Scalar",
    "ZERO_DEGREE",
    "as_scalar",
    "conjugate",
    "determinant",
    "divisors",
    "field_of",
    "inverse",
    "is_rational",
    "kernel_basis",
    "parse_scalar",
    "quad",
    "rank",
    "rational_roots",
    "render_scalar",
    "rref",
    "solve",
    "sort_key",
    "sqrt_of_integer",
    "sqrt_scalar",
]
