"""Function-hiding inner-product encryption, tag-comparison variant.

Keys are single G1 vectors g1^(v.B), ciphertexts single G2 vectors
g2^(w.B*), with B an invertible masking matrix and B* its dual
det(B) * (B^-1)^T.  Decryption pairs the two vectors componentwise and
returns the target-group element

    e(g1, g2)^(det(B) * <v, w>)

as an opaque tag; no discrete-log recovery is attempted, so callers may
only compare tags for equality.  All randomness lives inside the
plaintext vectors: this module is deterministic given msk and vector,
and treats v and w as opaque.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass

from .algebra import dual_matrix, row_vec_mat_mul, sample_invertible_matrix
from .algebra.suite import PairingSuite
from .errors import ParameterError


@dataclass(frozen=True)
class PublicParams:
    """Group-suite descriptor plus the vector dimension."""

    suite: PairingSuite
    n: int


@dataclass(frozen=True)
class MasterSecretKey:
    pp: PublicParams
    g1: object
    g2: object
    b: tuple
    b_star: tuple
    fingerprint: bytes

    @property
    def suite(self) -> PairingSuite:
        return self.pp.suite

    @property
    def n(self) -> int:
        return self.pp.n


def msk_fingerprint(suite: PairingSuite, n: int, b, b_star) -> bytes:
    """Key-check value binding tokens and ciphertexts to one msk.

    A hash of the pp descriptor and the masking matrices; it travels in
    the serialized artifacts so mixing keys is caught at format level.
    """
    h = hashlib.sha256()
    h.update(b"SJF1")
    h.update(suite.name.encode("utf-8"))
    h.update(n.to_bytes(4, "little"))
    for mat in (b, b_star):
        for row in mat:
            for x in row:
                h.update(suite.scalar_to_bytes(x))
    return h.digest()


def ipe_setup(suite: PairingSuite, n: int, rng) -> tuple[PublicParams, MasterSecretKey]:
    """Sample an invertible mask B and derive its dual."""
    if n < 1:
        raise ParameterError("dimension must be >= 1")
    b = tuple(tuple(row) for row in sample_invertible_matrix(n, suite.order, rng))
    b_star = tuple(tuple(row) for row in dual_matrix([list(r) for r in b], suite.order))
    pp = PublicParams(suite=suite, n=n)
    msk = MasterSecretKey(
        pp=pp,
        g1=suite.g1_gen(),
        g2=suite.g2_gen(),
        b=b,
        b_star=b_star,
        fingerprint=msk_fingerprint(suite, n, b, b_star),
    )
    return pp, msk


def ipe_token(msk: MasterSecretKey, v: list[int]) -> list:
    """g1^(v.B); deterministic, all randomness is the caller's burden."""
    if len(v) != msk.n:
        raise ParameterError(f"token vector has length {len(v)}, expected {msk.n}")
    masked = row_vec_mat_mul(list(v), [list(r) for r in msk.b], msk.suite.order)
    return msk.suite.vec_exp_g1(masked)


def ipe_encrypt(msk: MasterSecretKey, w: list[int]) -> list:
    """g2^(w.B*)."""
    if len(w) != msk.n:
        raise ParameterError(f"cipher vector has length {len(w)}, expected {msk.n}")
    masked = row_vec_mat_mul(list(w), [list(r) for r in msk.b_star], msk.suite.order)
    return msk.suite.vec_exp_g2(masked)


def ipe_decrypt_tag(pp: PublicParams, tk: list, ct: list):
    """Pair token against ciphertext: e(g1,g2)^(det(B) * <v,w>), as a tag."""
    if len(tk) != pp.n or len(ct) != pp.n:
        raise ParameterError("token/ciphertext dimension mismatch")
    return pp.suite.multi_pair(tk, ct)
