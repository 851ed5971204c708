"""Finite-field, matrix, and pairing-group primitives."""

from .field import (
    inv_mod,
    rand_nonzero_scalar,
    rand_scalar,
    scalar_byte_len,
    scalar_from_bytes,
    scalar_to_bytes,
)
from .matrix import (
    SingularMatrixError,
    determinant,
    dual_matrix,
    identity,
    mat_mul,
    mat_transpose,
    matrix_inverse,
    row_vec_mat_mul,
    sample_invertible_matrix,
)
from .suite import PairingSuite, get_suite

__all__ = [
    "PairingSuite",
    "SingularMatrixError",
    "determinant",
    "dual_matrix",
    "get_suite",
    "identity",
    "inv_mod",
    "mat_mul",
    "mat_transpose",
    "matrix_inverse",
    "rand_nonzero_scalar",
    "rand_scalar",
    "row_vec_mat_mul",
    "sample_invertible_matrix",
    "scalar_byte_len",
    "scalar_from_bytes",
    "scalar_to_bytes",
]
