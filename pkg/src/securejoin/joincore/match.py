"""Server-side hash join over tags, and the plaintext reference join.

Both produce the same MatchResult shape so the encrypted pipeline can
be compared against the plaintext semantics verbatim: join_pairs are
the cross-table matches, groups the underlying equality classes of
size two or more (including intra-table co-members, which are genuine
leakage even though they never appear as join pairs).
"""

from __future__ import annotations

from collections import defaultdict
from typing import Iterable, Sequence

from .model import JoinQuery, MatchResult, PlainTable, Tag


def _canonical_result(
    query_id: str,
    pairs: Iterable[tuple[int, int]],
    groups: Iterable[Iterable[tuple[str, int]]],
) -> MatchResult:
    canon_groups = sorted(tuple(sorted(g)) for g in groups)
    return MatchResult(
        query_id=query_id,
        join_pairs=tuple(sorted(set(pairs))),
        groups=tuple(canon_groups),
    )


def sj_match(tags_a: Sequence[Tag], tags_b: Sequence[Tag]) -> MatchResult:
    """Bucket tags by canonical bytes, expected O(len_a + len_b).

    The dict key is the full tag byte string, so bucket hits compare
    exact group elements and digest collisions cannot create matches.
    All tags must come from one query.
    """
    query_ids = {t.query_id for t in list(tags_a) + list(tags_b)}
    if len(query_ids) > 1:
        raise ValueError("sj_match expects tags from a single query")
    query_id = query_ids.pop() if query_ids else ""

    buckets: dict[bytes, tuple[list[int], list[int], list[tuple[str, int]]]] = defaultdict(
        lambda: ([], [], [])
    )
    for tag in tags_a:
        entry = buckets[tag.value]
        entry[0].append(tag.row_id)
        entry[2].append((tag.table_id, tag.row_id))
    for tag in tags_b:
        entry = buckets[tag.value]
        entry[1].append(tag.row_id)
        entry[2].append((tag.table_id, tag.row_id))

    pairs = []
    groups = []
    for rows_a, rows_b, members in buckets.values():
        if len(members) >= 2:
            groups.append(members)
        for ra in rows_a:
            for rb in rows_b:
                pairs.append((ra, rb))
    return _canonical_result(query_id, pairs, groups)


def oracle_join(table_a: PlainTable, table_b: PlainTable, query: JoinQuery) -> MatchResult:
    """Exact plaintext evaluation of the selection-filtered equi-join."""
    sat_a = [r for r in table_a.rows if query.clause_a.satisfied_by(r)]
    sat_b = [r for r in table_b.rows if query.clause_b.satisfied_by(r)]

    by_join: dict[str, tuple[list[int], list[int], list[tuple[str, int]]]] = defaultdict(
        lambda: ([], [], [])
    )
    for row in sat_a:
        entry = by_join[row.join_value]
        entry[0].append(row.row_id)
        entry[2].append((table_a.table_id, row.row_id))
    for row in sat_b:
        entry = by_join[row.join_value]
        entry[1].append(row.row_id)
        entry[2].append((table_b.table_id, row.row_id))

    pairs = []
    groups = []
    for rows_a, rows_b, members in by_join.values():
        if len(members) >= 2:
            groups.append(members)
        for ra in rows_a:
            for rb in rows_b:
                pairs.append((ra, rb))
    return _canonical_result(query.query_id, pairs, groups)
