"""Exact scalar arithmetic and linear algebra."""

from .scalars import QuadScalar, as_fraction, sqrt_rational, squarefree_decompose
from .upoly import (
    Factorization,
    UPoly,
    factor_rational,
    quadratic_roots,
    rational_roots,
    squarefree_part,
    upoly_gcd,
)
from .linalg import (
    char_poly,
    char_poly_coeffs,
    det,
    eigen_factors,
    exterior_power,
    identity,
    inverse,
    kernel_basis,
    matmul,
    rank,
    rref,
    smith_normal_form,
    to_matrix,
    transpose,
    upoly_diagonal_form,
    zeros,
)

__all__ = [
    "QuadScalar", "as_fraction", "sqrt_rational", "squarefree_decompose",
    "Factorization", "UPoly", "factor_rational", "quadratic_roots", "rational_roots",
    "squarefree_part", "upoly_gcd",
    "char_poly", "char_poly_coeffs", "det", "eigen_factors", "exterior_power", "identity",
    "inverse", "kernel_basis", "matmul", "rank", "rref", "smith_normal_form", "to_matrix",
    "transpose", "upoly_diagonal_form", "zeros",
]
