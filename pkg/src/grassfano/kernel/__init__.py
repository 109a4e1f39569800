"""Exact scalars, polynomials, matrices and truncated series."""

from grassfano.kernel.fields import DEFAULT_PRIME, GF, QQ, Fp, PrimeField, RationalField, is_prime
from grassfano.kernel.matrix import (
    EigenLines,
    Matrix,
    char_poly,
    charpoly_coeffs,
    eigen_lines,
    kernel_basis,
    normalize_projective,
    roots_mod_p,
)
from grassfano.kernel.poly import MINUS_INFINITY, Poly
from grassfano.kernel.series import BivariateSeries, series_expand

__all__ = [
    "DEFAULT_PRIME", "GF", "QQ", "Fp", "PrimeField", "RationalField", "is_prime",
    "EigenLines", "Matrix", "char_poly", "charpoly_coeffs", "eigen_lines", "kernel_basis",
    "normalize_projective", "roots_mod_p", "MINUS_INFINITY", "Poly",
    "BivariateSeries", "series_expand",
]
