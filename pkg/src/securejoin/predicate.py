"""Hash-to-field embeddings and polynomial encoding of IN-clause predicates.

Attribute values are embedded into Z_q through a wide SHA-512 digest
reduced mod q (the 512-bit digest keeps the reduction bias below
2^-256 for a 256-bit q).  Domain separation covers the role of the
value: join-column hashes share one domain across both tables, so equal
join values collide by construction, while non-join attributes are
separated per attribute index.

An IN-clause over one attribute becomes a polynomial whose roots are
the embedded values, scaled by a uniform nonzero constant; rows hitting
a root zero out the polynomial's contribution to the token/row inner
product.  An unconstrained attribute is the zero polynomial.
"""

from __future__ import annotations

import hashlib
from typing import Iterable, Sequence

from .errors import ParameterError

_JOIN_PREFIX = b"SJ\x01join\x00"
_ATTR_PREFIX = b"SJ\x01attr\x00"


def _hash_to_scalar(prefix: bytes, payload: bytes, q: int) -> int:
    digest = hashlib.sha512(prefix + payload).digest()
    return int.from_bytes(digest, "big") % q


def hash_join_value(value: str, q: int) -> int:
    """Embed a join-column value; shared by both tables, so equal values match."""
    return _hash_to_scalar(_JOIN_PREFIX, value.encode("utf-8"), q)


def embed_attr(index: int, value: str, q: int) -> int:
    """Embed a non-join attribute value, domain-separated by attribute index.

    The index is the 1-based position of the attribute in the schema; it
    is deliberately not separated per table.
    """
    if index < 1:
        raise ParameterError("attribute index must be >= 1")
    prefix = _ATTR_PREFIX + index.to_bytes(4, "big") + b"\x00"
    return _hash_to_scalar(prefix, value.encode("utf-8"), q)


def zero_poly(t: int) -> list[int]:
    """The zero polynomial of degree bound t: t+1 zero coefficients."""
    if t < 0:
        raise ParameterError("degree bound must be >= 0")
    return [0] * (t + 1)


def build_poly(roots: Iterable[int], t: int, q: int, rng) -> list[int]:
    """Random polynomial with exactly the given roots, degree bound t.

    Returns the t+1 coefficients of c * prod(x - root), constant term
    first, with c uniform in Z_q \\ {0}.  Duplicate roots are collapsed;
    coefficients above the root count are zero.
    """
    unique = sorted({r % q for r in roots})
    if not unique:
        raise ParameterError("empty IN clause")
    if len(unique) > t:
        raise ParameterError("too many IN values")
    coeffs = [1]
    for root in unique:
        nxt = [0] * (len(coeffs) + 1)
        for j, cj in enumerate(coeffs):
            nxt[j] = (nxt[j] - root * cj) % q
            nxt[j + 1] = (nxt[j + 1] + cj) % q
        coeffs = nxt
    c = rng.randrange(1, q)
    coeffs = [c * cj % q for cj in coeffs]
    coeffs.extend([0] * (t + 1 - len(coeffs)))
    return coeffs


def eval_poly(coeffs: Sequence[int], x: int, q: int) -> int:
    """Horner evaluation mod q (test oracle for the root encoding)."""
    acc = 0
    for cj in reversed(coeffs):
        acc = (acc * x + cj) % q
    return acc
