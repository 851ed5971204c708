"""Secure join scheme: encryption, tokens, server-side matching, codecs."""

from .match import oracle_join, sj_match
from .model import (
    UNCONSTRAINED,
    EncryptedRow,
    EncryptedTable,
    JoinQuery,
    MatchResult,
    PlainRow,
    PlainTable,
    QueryTokenPair,
    SchemeParams,
    SelectionClause,
    TableSchema,
    TableToken,
    Tag,
)
from .scheme import (
    build_query_vector,
    build_row_vector,
    sj_decrypt_row,
    sj_decrypt_table,
    sj_encrypt_row,
    sj_encrypt_table,
    sj_run_query,
    sj_setup,
    sj_token_gen,
)

__all__ = [
    "UNCONSTRAINED",
    "EncryptedRow",
    "EncryptedTable",
    "JoinQuery",
    "MatchResult",
    "PlainRow",
    "PlainTable",
    "QueryTokenPair",
    "SchemeParams",
    "SelectionClause",
    "TableSchema",
    "TableToken",
    "Tag",
    "build_query_vector",
    "build_row_vector",
    "oracle_join",
    "sj_decrypt_row",
    "sj_decrypt_table",
    "sj_encrypt_row",
    "sj_encrypt_table",
    "sj_match",
    "sj_run_query",
    "sj_setup",
    "sj_token_gen",
]
