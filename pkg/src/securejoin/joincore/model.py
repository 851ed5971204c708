"""Domain types for tables, queries, ciphertexts, tokens, tags and matches."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from ..errors import ParameterError


@dataclass(frozen=True)
class TableSchema:
    """Join attribute plus m named non-join attributes."""

    table_id: str
    join_attr: str
    attr_names: tuple[str, ...]

    def __post_init__(self):
        if len(self.attr_names) < 1:
            raise ParameterError("schema needs at least one non-join attribute")
        names = (self.join_attr, *self.attr_names)
        if len(set(names)) != len(names):
            raise ParameterError("attribute names must be unique")

    @property
    def m(self) -> int:
        return len(self.attr_names)


@dataclass(frozen=True)
class PlainRow:
    """One plaintext row: canonical join value plus m canonical attributes."""

    row_id: int
    join_value: str
    attrs: tuple[str, ...]


@dataclass(frozen=True)
class PlainTable:
    schema: TableSchema
    rows: tuple[PlainRow, ...]

    def __post_init__(self):
        m = self.schema.m
        for row in self.rows:
            if len(row.attrs) != m:
                raise ParameterError(
                    f"row {row.row_id} has {len(row.attrs)} attributes, schema has {m}"
                )

    @property
    def table_id(self) -> str:
        return self.schema.table_id


@dataclass(frozen=True)
class SelectionClause:
    """Per-attribute IN lists, keyed by 1-based attribute index.

    Attributes absent from the mapping are unconstrained.  An empty
    mapping is the pure equi-join clause.
    """

    in_lists: Mapping[int, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        frozen = {}
        for idx, values in dict(self.in_lists).items():
            if idx < 1:
                raise ParameterError("clause attribute index must be >= 1")
            if not values:
                raise ParameterError("empty IN clause")
            frozen[int(idx)] = tuple(values)
        object.__setattr__(self, "in_lists", frozen)

    def is_unconstrained(self) -> bool:
        return not self.in_lists

    def satisfied_by(self, row: PlainRow) -> bool:
        return all(row.attrs[i - 1] in values for i, values in self.in_lists.items())


#: Clause with no restrictions at all.
UNCONSTRAINED = SelectionClause({})


@dataclass(frozen=True)
class JoinQuery:
    query_id: str
    clause_a: SelectionClause
    clause_b: SelectionClause


@dataclass(frozen=True)
class SchemeParams:
    """m non-join attributes, IN lists of size up to t; vectors take
    one slot for the hashed join value, m*(t+1) attribute-power slots
    and two randomization slots."""

    m: int
    t: int

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError("m must be >= 1")
        if self.t < 1:
            raise ParameterError("t must be >= 1")

    @property
    def n(self) -> int:
        return self.m * (self.t + 1) + 3

    def check_clause(self, clause: SelectionClause) -> None:
        for idx, values in clause.in_lists.items():
            if idx > self.m:
                raise ParameterError(f"clause references attribute {idx}, schema has m={self.m}")
            if len(set(values)) > self.t:
                raise ParameterError("too many IN values")


@dataclass(frozen=True)
class EncryptedRow:
    row_id: int
    cipher: tuple  # n G2 elements


@dataclass(frozen=True)
class EncryptedTable:
    table_id: str
    params: SchemeParams
    suite_name: str
    fingerprint: bytes
    rows: tuple[EncryptedRow, ...]

    def __post_init__(self):
        n = self.params.n
        for row in self.rows:
            if len(row.cipher) != n:
                raise ParameterError(f"encrypted row {row.row_id} has wrong dimension")


@dataclass(frozen=True)
class TableToken:
    """Query token addressed to one table: n G1 elements."""

    table_id: str
    elems: tuple

    @property
    def n(self) -> int:
        return len(self.elems)


@dataclass(frozen=True)
class QueryTokenPair:
    """The two tokens of one query; built from a single ephemeral key k
    that is discarded after construction and never serialized."""

    query_id: str
    suite_name: str
    fingerprint: bytes
    token_a: TableToken
    token_b: TableToken


@dataclass(frozen=True)
class Tag:
    """Canonical bytes of a decrypted target-group element, with provenance."""

    value: bytes
    table_id: str
    row_id: int
    query_id: str


@dataclass(frozen=True)
class MatchResult:
    """Join pairs plus the tag-equality groups behind them.

    join_pairs are (row_id_A, row_id_B) in sorted order; groups are the
    size->=2 equality classes as sorted (table_id, row_id) tuples, also
    sorted, including intra-table co-members.
    """

    query_id: str
    join_pairs: tuple[tuple[int, int], ...]
    groups: tuple[tuple[tuple[str, int], ...], ...]
