"""Abstract interface for a type-3 asymmetric pairing suite.

A suite bundles three groups G1, G2, GT of the same prime order q with a
bilinear map e: G1 x G2 -> GT.  Group elements are opaque immutable
values; all operations go through the suite so callers never depend on a
concrete representation.  Every group has a canonical injective byte
encoding, which is the contract used by the file codecs.

Elements from different suites (or different group sides) must never be
mixed; the file formats carry the suite name to catch this early.
"""

from __future__ import annotations

import abc
from typing import Sequence

from .field import scalar_byte_len, scalar_from_bytes, scalar_to_bytes


class PairingSuite(abc.ABC):
    """Three prime-order groups plus a bilinear pairing."""

    name: str
    order: int
    #: False for simulation suites that keep exponents in the clear.
    secure: bool

    @property
    def scalar_bytes(self) -> int:
        return scalar_byte_len(self.order)

    def scalar_to_bytes(self, x: int) -> bytes:
        return scalar_to_bytes(x, self.order)

    def scalar_from_bytes(self, data: bytes) -> int:
        return scalar_from_bytes(data, self.order)

    # -- generators and identities -------------------------------------
    @abc.abstractmethod
    def g1_gen(self): ...

    @abc.abstractmethod
    def g2_gen(self): ...

    @abc.abstractmethod
    def g1_identity(self): ...

    @abc.abstractmethod
    def g2_identity(self): ...

    @abc.abstractmethod
    def gt_identity(self): ...

    def gt_gen(self):
        """e(g1, g2), the canonical GT generator."""
        return self.pair(self.g1_gen(), self.g2_gen())

    # -- group operations ------------------------------------------------
    @abc.abstractmethod
    def g1_mul(self, a, b): ...

    @abc.abstractmethod
    def g2_mul(self, a, b): ...

    @abc.abstractmethod
    def gt_mul(self, a, b): ...

    @abc.abstractmethod
    def g1_exp(self, k: int):
        """g1^k for the fixed generator (fast path)."""

    @abc.abstractmethod
    def g2_exp(self, k: int): ...

    @abc.abstractmethod
    def g1_exp_of(self, a, k: int):
        """a^k for an arbitrary G1 element."""

    @abc.abstractmethod
    def g2_exp_of(self, a, k: int): ...

    @abc.abstractmethod
    def gt_exp_of(self, a, k: int): ...

    # -- pairing -----------------------------------------------------------
    @abc.abstractmethod
    def pair(self, a, b): ...

    def multi_pair(self, us: Sequence, ws: Sequence):
        """Product of pairings: prod_i e(us[i], ws[i]).

        Equals e(g1, g2)^<x, y> when us = g1^x and ws = g2^y.  Concrete
        suites may override with a shared-accumulator implementation.
        """
        if len(us) != len(ws):
            raise ValueError("vector length mismatch")
        acc = self.gt_identity()
        for u, w in zip(us, ws):
            acc = self.gt_mul(acc, self.pair(u, w))
        return acc

    def vec_exp_g1(self, v: Sequence[int]) -> list:
        """Componentwise g1^(v_i)."""
        return [self.g1_exp(x) for x in v]

    def vec_exp_g2(self, v: Sequence[int]) -> list:
        return [self.g2_exp(x) for x in v]

    # -- canonical encodings ----------------------------------------------
    g1_bytes_len: int
    g2_bytes_len: int
    gt_bytes_len: int

    @abc.abstractmethod
    def g1_to_bytes(self, a) -> bytes: ...

    @abc.abstractmethod
    def g1_from_bytes(self, data: bytes): ...

    @abc.abstractmethod
    def g2_to_bytes(self, a) -> bytes: ...

    @abc.abstractmethod
    def g2_from_bytes(self, data: bytes): ...

    @abc.abstractmethod
    def gt_to_bytes(self, a) -> bytes: ...

    @abc.abstractmethod
    def gt_from_bytes(self, data: bytes): ...


def get_suite(name: str) -> PairingSuite:
    """Look up a pairing suite by its codec name.

    Supported: "bn256" (the production curve) and "toy-<prime>" for the
    clear-exponent simulation suites used by tests and oracles.
    """
    if name == "bn256":
        from .bn256 import Bn256Suite

        return Bn256Suite.instance()
    if name.startswith("toy-"):
        from .toy import ToySuite

        try:
            q = int(name[4:])
        except ValueError:
            raise ValueError(f"bad toy suite name: {name!r}") from None
        return ToySuite(q)
    raise ValueError(f"unknown pairing suite: {name!r}")
