"""Leakage profiles: what an honest-but-curious server learns, and when.

The unit of comparison is the set of row-equality pairs revealed up to
a point in a query timeline (time index i = after the first i queries).
The scheme's target profile is the transitive closure of the per-query
pairs of clause-satisfying rows with equal join values; the baselines
model the plaintext-level leakage of deterministic encryption, onion
encryption, and select-then-unwrap schemes for the same workload.
observed_leakage extracts the actually-observable profile from tags,
comparing across every executed query with no closure applied, so
super-additive behavior would show up as extra pairs.
"""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from .joincore.model import JoinQuery, PlainTable, Tag


@dataclass(frozen=True, order=True)
class RowRef:
    table_id: str
    row_id: int

    def __str__(self) -> str:
        return f"{self.table_id}:{self.row_id}"


@dataclass(frozen=True, order=True)
class EqualityPair:
    """Unordered pair of distinct row references, stored sorted."""

    lo: RowRef
    hi: RowRef

    @staticmethod
    def of(a: RowRef, b: RowRef) -> "EqualityPair":
        if a == b:
            raise ValueError("equality pair needs two distinct rows")
        return EqualityPair(*sorted((a, b)))

    def __str__(self) -> str:
        return f"({self.lo},{self.hi})"


@dataclass(frozen=True)
class LeakageProfile:
    pairs: frozenset[EqualityPair]
    closed: bool

    @property
    def count(self) -> int:
        return len(self.pairs)

    def sorted_pairs(self) -> list[EqualityPair]:
        return sorted(self.pairs)


class BaselineModel(str, enum.Enum):
    DET = "DET"
    ONION = "ONION"
    KPABE_SELECT = "KPABE_SELECT"
    SECURE_JOIN = "SECURE_JOIN"


def _pairs_within(groups: Iterable[Sequence[RowRef]]) -> set[EqualityPair]:
    pairs = set()
    for group in groups:
        refs = sorted(set(group))
        for i, a in enumerate(refs):
            for b in refs[i + 1 :]:
                pairs.add(EqualityPair(a, b))
    return pairs


def _transitive_closure(pairs: set[EqualityPair]) -> frozenset[EqualityPair]:
    """Close under shared membership: revealed equalities are join-value
    equalities, so connected components collapse to complete graphs."""
    parent: dict[RowRef, RowRef] = {}

    def find(x: RowRef) -> RowRef:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    for pair in pairs:
        parent.setdefault(pair.lo, pair.lo)
        parent.setdefault(pair.hi, pair.hi)
        ra, rb = find(pair.lo), find(pair.hi)
        if ra != rb:
            parent[ra] = rb
    components: dict[RowRef, list[RowRef]] = defaultdict(list)
    for ref in parent:
        components[find(ref)].append(ref)
    return frozenset(_pairs_within(components.values()))


def _query_revealed_pairs(
    table_a: PlainTable, table_b: PlainTable, query: JoinQuery
) -> set[EqualityPair]:
    """Pairs of clause-satisfying rows with equal join value (one query)."""
    by_join: dict[str, list[RowRef]] = defaultdict(list)
    for row in table_a.rows:
        if query.clause_a.satisfied_by(row):
            by_join[row.join_value].append(RowRef(table_a.table_id, row.row_id))
    for row in table_b.rows:
        if query.clause_b.satisfied_by(row):
            by_join[row.join_value].append(RowRef(table_b.table_id, row.row_id))
    return _pairs_within(by_join.values())


def ideal_leakage(
    table_a: PlainTable,
    table_b: PlainTable,
    queries: Sequence[JoinQuery],
    upto: int,
) -> LeakageProfile:
    """Target profile after the first `upto` queries: union of per-query
    revealed pairs, transitively closed."""
    revealed: set[EqualityPair] = set()
    for query in queries[:upto]:
        revealed |= _query_revealed_pairs(table_a, table_b, query)
    return LeakageProfile(pairs=_transitive_closure(revealed), closed=True)


def observed_leakage(tags: Iterable[Tag]) -> LeakageProfile:
    """Raw observation: rows whose tags are byte-equal, across all queries.

    No closure is applied; this is exactly what the server's tag view
    supports.  Cross-query byte equality counts, so super-additive
    leakage (or a broken scheme) inflates this profile.
    """
    by_value: dict[bytes, set[RowRef]] = defaultdict(set)
    for tag in tags:
        by_value[tag.value].add(RowRef(tag.table_id, tag.row_id))
    return LeakageProfile(pairs=frozenset(_pairs_within(by_value.values())), closed=False)


def cross_query_tag_equalities(tags: Iterable[Tag]) -> int:
    """Count pairs of byte-equal tags from *different* queries."""
    by_value: dict[bytes, list[Tag]] = defaultdict(list)
    for tag in tags:
        by_value[tag.value].append(tag)
    count = 0
    for group in by_value.values():
        for i, a in enumerate(group):
            for b in group[i + 1 :]:
                if a.query_id != b.query_id:
                    count += 1
    return count


def _full_equality_graph(table_a: PlainTable, table_b: PlainTable) -> frozenset[EqualityPair]:
    by_join: dict[str, list[RowRef]] = defaultdict(list)
    for table in (table_a, table_b):
        for row in table.rows:
            by_join[row.join_value].append(RowRef(table.table_id, row.row_id))
    return frozenset(_pairs_within(by_join.values()))


def baseline_leakage(
    model: BaselineModel,
    table_a: PlainTable,
    table_b: PlainTable,
    queries: Sequence[JoinQuery],
    time_index: int,
) -> LeakageProfile:
    """Plaintext-level leakage model of a baseline scheme at a time index.

    DET reveals the full join-value equality graph at upload time.
    ONION reveals nothing until the first join touches the column pair,
    then the full graph.  KPABE_SELECT unwraps rows cumulatively as
    they satisfy any executed query's selection, and every unwrapped
    pair with equal join values is revealed (the super-additive case).
    SECURE_JOIN is the scheme's own target profile.
    """
    if model is BaselineModel.DET:
        return LeakageProfile(pairs=_full_equality_graph(table_a, table_b), closed=True)
    if model is BaselineModel.ONION:
        if time_index >= 1 and len(queries) >= 1:
            return LeakageProfile(pairs=_full_equality_graph(table_a, table_b), closed=True)
        return LeakageProfile(pairs=frozenset(), closed=True)
    if model is BaselineModel.KPABE_SELECT:
        unwrapped: set[RowRef] = set()
        for query in queries[:time_index]:
            for row in table_a.rows:
                if query.clause_a.satisfied_by(row):
                    unwrapped.add(RowRef(table_a.table_id, row.row_id))
            for row in table_b.rows:
                if query.clause_b.satisfied_by(row):
                    unwrapped.add(RowRef(table_b.table_id, row.row_id))
        pairs = {
            p for p in _full_equality_graph(table_a, table_b) if p.lo in unwrapped and p.hi in unwrapped
        }
        return LeakageProfile(pairs=frozenset(pairs), closed=False)
    if model is BaselineModel.SECURE_JOIN:
        return ideal_leakage(table_a, table_b, queries, time_index)
    raise ValueError(f"unknown baseline model: {model!r}")


@dataclass(frozen=True)
class LeakageReportRow:
    model: str
    time_index: int
    profile: LeakageProfile


@dataclass(frozen=True)
class LeakageReport:
    rows: tuple[LeakageReportRow, ...]

    def to_csv_rows(self) -> list[list[str]]:
        out = [["model", "time_index", "pair_count", "pairs"]]
        for row in self.rows:
            pair_str = ";".join(str(p) for p in row.profile.sorted_pairs())
            out.append([row.model, str(row.time_index), str(row.profile.count), pair_str])
        return out

    def render_text(self) -> str:
        models = []
        for row in self.rows:
            if row.model not in models:
                models.append(row.model)
        indices = sorted({row.time_index for row in self.rows})
        counts = {(r.model, r.time_index): r.profile.count for r in self.rows}
        width = max(len(m) for m in models) if models else 5
        lines = [
            " " * width + "  " + "  ".join(f"t{i:<4d}" for i in indices),
        ]
        for model in models:
            cells = "  ".join(
                f"{counts[(model, i)]:<5d}" if (model, i) in counts else f"{'-':<5}"
                for i in indices
            )
            lines.append(f"{model:<{width}}  {cells}")
        return "\n".join(lines) + "\n"


def leakage_report(
    table_a: PlainTable,
    table_b: PlainTable,
    queries: Sequence[JoinQuery],
    models: Sequence[BaselineModel] = tuple(BaselineModel),
    observed_tags: Iterable[Tag] | None = None,
) -> LeakageReport:
    """Tabulate pair counts and pair sets per model per time index.

    When tags from an actual pipeline run are supplied, an OBSERVED row
    is appended at the final time index for comparison against the
    SECURE_JOIN target.
    """
    rows = []
    for model in models:
        for time_index in range(len(queries) + 1):
            rows.append(
                LeakageReportRow(
                    model=model.value,
                    time_index=time_index,
                    profile=baseline_leakage(model, table_a, table_b, queries, time_index),
                )
            )
    if observed_tags is not None:
        rows.append(
            LeakageReportRow(
                model="OBSERVED",
                time_index=len(queries),
                profile=observed_leakage(observed_tags),
            )
        )
    return LeakageReport(rows=tuple(rows))
