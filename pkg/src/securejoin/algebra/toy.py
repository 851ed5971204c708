"""Clear-exponent simulation of a pairing suite.  NOT SECURE.

Group elements are just their discrete logs mod a configurable prime q,
and the "pairing" multiplies exponents.  This satisfies every algebraic
axiom of a type-3 suite exactly, which makes it the reference oracle for
property tests and lets the full pipeline run fast at any field size.
Nothing is hidden: anyone holding an element reads its exponent.
"""

from __future__ import annotations

from typing import Sequence

from .suite import PairingSuite

_G1_TAG, _G2_TAG, _GT_TAG = 1, 2, 3


class _Elem(tuple):
    """(group-tag, exponent) pair; the tag catches cross-group mixups."""

    __slots__ = ()

    def __new__(cls, tag: int, e: int):
        return tuple.__new__(cls, (tag, e))

    @property
    def exponent(self) -> int:
        return self[1]


class ToySuite(PairingSuite):
    """Exponent-tracking suite over Z_q for an arbitrary prime q."""

    secure = False

    def __init__(self, q: int):
        if q < 2:
            raise ValueError("modulus must be a prime >= 2")
        self.order = q
        self.name = f"toy-{q}"
        self.g1_bytes_len = self.g2_bytes_len = self.gt_bytes_len = self.scalar_bytes

    def __repr__(self):
        return f"ToySuite(q={self.order})"

    def _make(self, tag: int, e: int) -> _Elem:
        return _Elem(tag, e % self.order)

    def _check(self, a, tag: int) -> int:
        if not isinstance(a, _Elem) or a[0] != tag:
            raise TypeError("element from wrong group or suite")
        return a[1]

    # generators / identities
    def g1_gen(self):
        return self._make(_G1_TAG, 1)

    def g2_gen(self):
        return self._make(_G2_TAG, 1)

    def g1_identity(self):
        return self._make(_G1_TAG, 0)

    def g2_identity(self):
        return self._make(_G2_TAG, 0)

    def gt_identity(self):
        return self._make(_GT_TAG, 0)

    def gt_gen(self):
        return self._make(_GT_TAG, 1)

    # group ops
    def g1_mul(self, a, b):
        return self._make(_G1_TAG, self._check(a, _G1_TAG) + self._check(b, _G1_TAG))

    def g2_mul(self, a, b):
        return self._make(_G2_TAG, self._check(a, _G2_TAG) + self._check(b, _G2_TAG))

    def gt_mul(self, a, b):
        return self._make(_GT_TAG, self._check(a, _GT_TAG) + self._check(b, _GT_TAG))

    def g1_exp(self, k: int):
        return self._make(_G1_TAG, k)

    def g2_exp(self, k: int):
        return self._make(_G2_TAG, k)

    def g1_exp_of(self, a, k: int):
        return self._make(_G1_TAG, self._check(a, _G1_TAG) * (k % self.order))

    def g2_exp_of(self, a, k: int):
        return self._make(_G2_TAG, self._check(a, _G2_TAG) * (k % self.order))

    def gt_exp_of(self, a, k: int):
        return self._make(_GT_TAG, self._check(a, _GT_TAG) * (k % self.order))

    # pairing
    def pair(self, a, b):
        return self._make(_GT_TAG, self._check(a, _G1_TAG) * self._check(b, _G2_TAG))

    def multi_pair(self, us: Sequence, ws: Sequence):
        if len(us) != len(ws):
            raise ValueError("vector length mismatch")
        acc = 0
        for u, w in zip(us, ws):
            acc += self._check(u, _G1_TAG) * self._check(w, _G2_TAG)
        return self._make(_GT_TAG, acc)

    # encodings
    def _elem_to_bytes(self, a, tag: int) -> bytes:
        return self.scalar_to_bytes(self._check(a, tag))

    def _elem_from_bytes(self, data: bytes, tag: int):
        return self._make(tag, self.scalar_from_bytes(data))

    def g1_to_bytes(self, a) -> bytes:
        return self._elem_to_bytes(a, _G1_TAG)

    def g1_from_bytes(self, data: bytes):
        return self._elem_from_bytes(data, _G1_TAG)

    def g2_to_bytes(self, a) -> bytes:
        return self._elem_to_bytes(a, _G2_TAG)

    def g2_from_bytes(self, data: bytes):
        return self._elem_from_bytes(data, _G2_TAG)

    def gt_to_bytes(self, a) -> bytes:
        return self._elem_to_bytes(a, _GT_TAG)

    def gt_from_bytes(self, data: bytes):
        return self._elem_from_bytes(data, _GT_TAG)
