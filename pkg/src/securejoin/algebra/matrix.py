"""Square-matrix arithmetic over Z_q: determinant, inverse, dual matrix.

Matrices are lists of row lists of ints mod q.  Sizes stay small (the
scheme dimension is m*(t+1)+3), so O(n^3) Gaussian elimination with
modular-inverse pivoting is plenty.
"""

from __future__ import annotations

from .field import inv_mod


class SingularMatrixError(ValueError):
    pass


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a: list[list[int]], b: list[list[int]], q: int) -> list[list[int]]:
    n = len(a)
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) % q for col in bt] for row in a]


def mat_transpose(a: list[list[int]]) -> list[list[int]]:
    return [list(col) for col in zip(*a)]


def row_vec_mat_mul(v: list[int], m: list[list[int]], q: int) -> list[int]:
    """Row vector times matrix: (v . M)_j = sum_i v_i * M[i][j] mod q."""
    if len(v) != len(m):
        raise ValueError("dimension mismatch")
    n = len(m[0])
    out = [0] * n
    for vi, row in zip(v, m):
        if vi == 0:
            continue
        for j in range(n):
            out[j] += vi * row[j]
    return [x % q for x in out]


def determinant(m: list[list[int]], q: int) -> int:
    """Determinant mod q via Gaussian elimination with pivot search."""
    n = len(m)
    a = [row[:] for row in m]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] % q != 0), None)
        if pivot is None:
            return 0
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        p = a[col][col] % q
        det = det * p % q
        pinv = inv_mod(p, q)
        for r in range(col + 1, n):
            f = a[r][col] * pinv % q
            if f == 0:
                continue
            ar, ac = a[r], a[col]
            for c in range(col, n):
                ar[c] = (ar[c] - f * ac[c]) % q
    return det % q


def matrix_inverse(m: list[list[int]], q: int) -> list[list[int]]:
    """Inverse mod q by Gauss-Jordan; raises SingularMatrixError if det = 0."""
    n = len(m)
    a = [row[:] + ident_row for row, ident_row in zip(m, identity(n))]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] % q != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix not invertible")
        a[col], a[pivot] = a[pivot], a[col]
        pinv = inv_mod(a[col][col], q)
        a[col] = [x * pinv % q for x in a[col]]
        for r in range(n):
            if r == col:
                continue
            f = a[r][col]
            if f == 0:
                continue
            ar, ac = a[r], a[col]
            for c in range(2 * n):
                ar[c] = (ar[c] - f * ac[c]) % q
    return [row[n:] for row in a]


def dual_matrix(b: list[list[int]], q: int) -> list[list[int]]:
    """The dual B* = det(B) * (B^-1)^T, satisfying B . (B*)^T = det(B) * I."""
    det = determinant(b, q)
    if det == 0:
        raise SingularMatrixError("matrix not invertible")
    inv = matrix_inverse(b, q)
    return [[det * inv[j][i] % q for j in range(len(b))] for i in range(len(b))]


def sample_invertible_matrix(dim: int, q: int, rng) -> list[list[int]]:
    """Uniform invertible matrix over Z_q by rejection sampling.

    The rejection probability is about dim/q, negligible for
    cryptographic q; for toy fields a couple of retries may happen.
    """
    if dim < 1:
        raise ValueError("dimension must be >= 1")
    while True:
        m = [[rng.randrange(q) for _ in range(dim)] for _ in range(dim)]
        if determinant(m, q) != 0:
            return m
