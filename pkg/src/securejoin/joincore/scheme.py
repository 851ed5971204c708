"""The five-algorithm secure join scheme over the inner-product layer.

Client side: setup, per-row encryption, per-query token generation.
Server side: per-row decryption to tags (see match.py for the hash
join).  Row vectors carry the hashed join value, gamma2-scaled powers
of each embedded attribute and a fresh gamma1; query vectors carry the
shared ephemeral key k and the selection-polynomial coefficients.  The
two trailing slots are arranged so gamma1 and delta never contribute to
the inner product:

    w = (H(a0), c2*a1^0..c2*a1^t, ..., c2*am^0..c2*am^t, c1, 0)
    v = (k,    p_{1,0}..p_{1,t}, ..., p_{m,0}..p_{m,t},  0, d)

with c1 = gamma1, c2 = gamma2, d = delta, so <v, w> equals
k*H(a0) + gamma2 * sum_i P_i(a_i), which collapses to k*H(a0) exactly
when every constrained attribute hits a polynomial root.
"""

from __future__ import annotations

from ..algebra.field import rand_nonzero_scalar, rand_scalar
from ..algebra.suite import PairingSuite
from ..errors import FingerprintMismatchError, ParameterError
from ..fhipe import MasterSecretKey, PublicParams, ipe_encrypt, ipe_setup, ipe_token
from ..predicate import build_poly, embed_attr, hash_join_value, zero_poly
from .model import (
    EncryptedRow,
    EncryptedTable,
    JoinQuery,
    PlainRow,
    PlainTable,
    QueryTokenPair,
    SchemeParams,
    SelectionClause,
    TableToken,
    Tag,
)


def sj_setup(
    suite: PairingSuite, m: int, t: int, rng
) -> tuple[PublicParams, MasterSecretKey, SchemeParams]:
    """Set up one master key for tables with m attributes and IN lists up to t."""
    params = SchemeParams(m=m, t=t)
    pp, msk = ipe_setup(suite, params.n, rng)
    return pp, msk, params


def build_row_vector(
    row: PlainRow, params: SchemeParams, q: int, gamma1: int, gamma2: int
) -> list[int]:
    """Plaintext vector for one row; gamma2 must be nonzero."""
    if len(row.attrs) != params.m:
        raise ParameterError(
            f"row {row.row_id} has {len(row.attrs)} attributes, expected {params.m}"
        )
    w = [hash_join_value(row.join_value, q)]
    for i, value in enumerate(row.attrs, start=1):
        a = embed_attr(i, value, q)
        power = 1
        for _ in range(params.t + 1):
            w.append(gamma2 * power % q)
            power = power * a % q
    w.append(gamma1 % q)
    w.append(0)
    return w


def build_query_vector(
    k: int, clause: SelectionClause, params: SchemeParams, q: int, delta: int, rng
) -> list[int]:
    """Token vector for one table: key slot, polynomial blocks, (0, delta)."""
    if k % q == 0:
        raise ParameterError("query key k must be nonzero")
    params.check_clause(clause)
    v = [k % q]
    for i in range(1, params.m + 1):
        values = clause.in_lists.get(i)
        if values is None:
            v.extend(zero_poly(params.t))
        else:
            roots = [embed_attr(i, value, q) for value in values]
            v.extend(build_poly(roots, params.t, q, rng))
    v.append(0)
    v.append(delta % q)
    return v


def sj_encrypt_row(
    msk: MasterSecretKey, params: SchemeParams, row: PlainRow, rng
) -> EncryptedRow:
    """Probabilistic row encryption: fresh gamma1, gamma2 per row.

    gamma2 = 0 would zero every attribute slot and make the row match
    any selection, so it is resampled away (probability 1/q anyway).
    """
    q = msk.suite.order
    gamma1 = rand_scalar(rng, q)
    gamma2 = rand_nonzero_scalar(rng, q)
    w = build_row_vector(row, params, q, gamma1, gamma2)
    return EncryptedRow(row_id=row.row_id, cipher=tuple(ipe_encrypt(msk, w)))


def sj_encrypt_table(
    msk: MasterSecretKey, params: SchemeParams, table: PlainTable, rng
) -> EncryptedTable:
    return EncryptedTable(
        table_id=table.table_id,
        params=params,
        suite_name=msk.suite.name,
        fingerprint=msk.fingerprint,
        rows=tuple(sj_encrypt_row(msk, params, row, rng) for row in table.rows),
    )


def sj_token_gen(
    msk: MasterSecretKey,
    params: SchemeParams,
    query: JoinQuery,
    rng,
    table_id_a: str = "A",
    table_id_b: str = "B",
) -> QueryTokenPair:
    """One fresh k shared by both table tokens, independent deltas.

    k and the deltas are consumed here and never stored; unlinkability
    across queries rests on k being fresh per call.
    """
    q = msk.suite.order
    k = rand_nonzero_scalar(rng, q)
    v_a = build_query_vector(k, query.clause_a, params, q, rand_scalar(rng, q), rng)
    v_b = build_query_vector(k, query.clause_b, params, q, rand_scalar(rng, q), rng)
    return QueryTokenPair(
        query_id=query.query_id,
        suite_name=msk.suite.name,
        fingerprint=msk.fingerprint,
        token_a=TableToken(table_id=table_id_a, elems=tuple(ipe_token(msk, v_a))),
        token_b=TableToken(table_id=table_id_b, elems=tuple(ipe_token(msk, v_b))),
    )


def sj_decrypt_row(suite: PairingSuite, token_elems, enc_row: EncryptedRow) -> bytes:
    """Tag bytes for one row under one token: canonical e(Tk, C)."""
    if len(token_elems) != len(enc_row.cipher):
        raise ParameterError("token/ciphertext dimension mismatch")
    return suite.gt_to_bytes(suite.multi_pair(list(token_elems), list(enc_row.cipher)))


def sj_decrypt_table(
    suite: PairingSuite,
    token: TableToken,
    table: EncryptedTable,
    query_id: str,
    token_fingerprint: bytes | None = None,
) -> list[Tag]:
    """Decrypt every row of a table, yielding provenance-tagged tags."""
    if suite.name != table.suite_name:
        raise FingerprintMismatchError(
            f"table was encrypted under suite {table.suite_name}, not {suite.name}"
        )
    if token_fingerprint is not None and token_fingerprint != table.fingerprint:
        raise FingerprintMismatchError("token/table key mismatch")
    if token.n != table.params.n:
        raise ParameterError("token/table dimension mismatch")
    return [
        Tag(
            value=sj_decrypt_row(suite, token.elems, row),
            table_id=table.table_id,
            row_id=row.row_id,
            query_id=query_id,
        )
        for row in table.rows
    ]


def sj_run_query(
    suite: PairingSuite,
    tokens: QueryTokenPair,
    table_a: EncryptedTable,
    table_b: EncryptedTable,
) -> tuple[list[Tag], list[Tag]]:
    """Server-side decryption of both tables under one token pair."""
    tags_a = sj_decrypt_table(
        suite, tokens.token_a, table_a, tokens.query_id, tokens.fingerprint
    )
    tags_b = sj_decrypt_table(
        suite, tokens.token_b, table_b, tokens.query_id, tokens.fingerprint
    )
    return tags_a, tags_b
