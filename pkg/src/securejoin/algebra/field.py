"""Scalar arithmetic helpers for the prime field Z_q.

Scalars are plain Python integers in [0, q); all arithmetic is mod q.
The canonical wire encoding is fixed-width big-endian bytes, with the
width determined by the field modulus.
"""

from __future__ import annotations


def scalar_byte_len(q: int) -> int:
    """Number of bytes needed for the canonical encoding of a scalar mod q."""
    return (q.bit_length() + 7) // 8


def scalar_to_bytes(x: int, q: int) -> bytes:
    if not 0 <= x < q:
        raise ValueError("scalar out of range")
    return int(x).to_bytes(scalar_byte_len(q), "big")


def scalar_from_bytes(data: bytes, q: int) -> int:
    if len(data) != scalar_byte_len(q):
        raise ValueError("bad scalar length")
    x = int.from_bytes(data, "big")
    if x >= q:
        raise ValueError("scalar out of range")
    return x


def rand_scalar(rng, q: int) -> int:
    """Uniform element of Z_q from an explicit randomness handle."""
    return rng.randrange(q)


def rand_nonzero_scalar(rng, q: int) -> int:
    """Uniform element of Z_q \\ {0}."""
    return rng.randrange(1, q)


def inv_mod(x: int, q: int) -> int:
    """Multiplicative inverse mod q; raises ValueError on zero."""
    if x % q == 0:
        raise ValueError("zero has no inverse")
    return pow(x, -1, q)
