"""Benchmark harness: crypto micro-benchmarks and server-side join sweeps.

Three modes mirror the evaluation axes of the scheme: per-row crypto
operation cost versus IN-clause size, join runtime versus table size
(at fixed selectivity), and join runtime versus IN-clause size.  Join
timing covers server-side decryption plus the hash join only; a
plaintext pre-filter stands in for the orthogonal searchable-encryption
layer and excludes rows not carrying the queried selection value, which
is what makes runtime scale with selectivity.  Timers are monotonic and
wrap the crypto calls only, never file or table-construction work.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Sequence

from .algebra.suite import PairingSuite
from .joincore import (
    JoinQuery,
    PlainRow,
    PlainTable,
    SelectionClause,
    TableSchema,
    sj_encrypt_row,
    sj_encrypt_table,
    sj_match,
    sj_setup,
    sj_token_gen,
)
from .joincore.model import EncryptedTable, Tag
from .joincore.scheme import sj_decrypt_row
from .tabledata import rows_with_attr_value, synthesize_selectivity

#: Selection-column fractions used throughout the sweeps.
DEFAULT_SELECTIVITIES = (1 / 100, 1 / 50, 1 / 25, 1 / 12.5)

CSV_HEADER = (
    "experiment",
    "op",
    "rows",
    "selectivity",
    "t",
    "rep",
    "reps",
    "duration_s",
)


@dataclass(frozen=True)
class BenchRecord:
    experiment: str
    op: str
    rows: int
    selectivity: float
    t: int
    rep: int
    reps: int
    duration_s: float

    def as_csv_row(self) -> list[str]:
        return [
            self.experiment,
            self.op,
            str(self.rows),
            f"{self.selectivity:.6f}",
            str(self.t),
            str(self.rep),
            str(self.reps),
            f"{self.duration_s:.6f}",
        ]


def sel_value(fraction: float) -> str:
    """Stable column value naming one selectivity fraction."""
    return f"sel_{fraction:.6f}"


def gen_bench_tables(
    n_rows: int, selectivities: Sequence[float], seed: int
) -> tuple[PlainTable, PlainTable]:
    """Orders/Customers-shaped synthetic pair: custkey join plus one
    selection column carrying each fraction on floor(fraction*n) rows."""
    rng = random.Random(seed)
    orders = PlainTable(
        schema=TableSchema(table_id="Orders", join_attr="custkey", attr_names=("rawsel",)),
        rows=tuple(
            PlainRow(row_id=r, join_value=str(rng.randrange(1, n_rows + 1)), attrs=("-",))
            for r in range(1, n_rows + 1)
        ),
    )
    customers = PlainTable(
        schema=TableSchema(table_id="Customers", join_attr="custkey", attr_names=("rawsel",)),
        rows=tuple(
            PlainRow(row_id=r, join_value=str(r), attrs=("-",)) for r in range(1, n_rows + 1)
        ),
    )
    spec = [(sel_value(f), f) for f in selectivities]

    def with_selectivity(table: PlainTable, sub_seed: int) -> PlainTable:
        out = synthesize_selectivity(table, spec, seed=sub_seed)
        # drop the placeholder column, keeping only the selection column
        schema = TableSchema(
            table_id=out.schema.table_id,
            join_attr=out.schema.join_attr,
            attr_names=("selectivity",),
        )
        rows = tuple(
            PlainRow(row_id=r.row_id, join_value=r.join_value, attrs=(r.attrs[-1],))
            for r in out.rows
        )
        return PlainTable(schema=schema, rows=rows)

    return with_selectivity(orders, seed * 2 + 1), with_selectivity(customers, seed * 2 + 2)


def _bench_clause(fraction: float, in_size: int) -> SelectionClause:
    """IN list of the requested size: the live selection value padded
    with values no row carries, so cost grows with t while the selected
    row set stays put."""
    values = [sel_value(fraction)] + [f"__pad_{i}" for i in range(1, in_size)]
    return SelectionClause({1: tuple(values)})


def bench_crypto(
    suite: PairingSuite, t_values: Sequence[int], reps: int, seed: int
) -> list[BenchRecord]:
    """Token-generation, encryption and decryption cost for a single row."""
    records = []
    for t in t_values:
        rng = random.Random(seed * 1009 + t)
        _, msk, params = sj_setup(suite, 1, t, rng)
        row = PlainRow(row_id=1, join_value="42", attrs=(sel_value(1 / 100),))
        clause = _bench_clause(1 / 100, t)
        query = JoinQuery(query_id="bench", clause_a=clause, clause_b=clause)
        enc_row = sj_encrypt_row(msk, params, row, rng)
        tokens = sj_token_gen(msk, params, query, rng)
        for rep in range(reps):
            start = time.perf_counter()
            sj_token_gen(msk, params, query, rng)
            records.append(
                BenchRecord("crypto", "tokengen", 1, 0.0, t, rep, reps, time.perf_counter() - start)
            )
            start = time.perf_counter()
            sj_encrypt_row(msk, params, row, rng)
            records.append(
                BenchRecord("crypto", "encrypt", 1, 0.0, t, rep, reps, time.perf_counter() - start)
            )
            start = time.perf_counter()
            sj_decrypt_row(suite, tokens.token_a.elems, enc_row)
            records.append(
                BenchRecord("crypto", "decrypt", 1, 0.0, t, rep, reps, time.perf_counter() - start)
            )
    return records


def _timed_filtered_join(
    suite: PairingSuite,
    tokens,
    enc_a: EncryptedTable,
    enc_b: EncryptedTable,
    ids_a: Sequence[int],
    ids_b: Sequence[int],
) -> float:
    """Decrypt the pre-filtered rows of both tables and match; the
    pre-filter row selection itself stays outside the clock."""
    rows_a = [enc_a.rows[i - 1] for i in ids_a]
    rows_b = [enc_b.rows[i - 1] for i in ids_b]
    start = time.perf_counter()
    tags_a = [
        Tag(
            value=sj_decrypt_row(suite, tokens.token_a.elems, row),
            table_id=enc_a.table_id,
            row_id=row.row_id,
            query_id=tokens.query_id,
        )
        for row in rows_a
    ]
    tags_b = [
        Tag(
            value=sj_decrypt_row(suite, tokens.token_b.elems, row),
            table_id=enc_b.table_id,
            row_id=row.row_id,
            query_id=tokens.query_id,
        )
        for row in rows_b
    ]
    sj_match(tags_a, tags_b)
    return time.perf_counter() - start


def _join_point(
    suite: PairingSuite,
    experiment: str,
    n_rows: int,
    fraction: float,
    t: int,
    in_size: int,
    reps: int,
    seed: int,
    selectivities: Sequence[float],
) -> list[BenchRecord]:
    rng = random.Random(seed * 7919 + n_rows * 13 + t)
    table_a, table_b = gen_bench_tables(n_rows, selectivities, seed)
    _, msk, params = sj_setup(suite, 1, t, rng)
    enc_a = sj_encrypt_table(msk, params, table_a, rng)
    enc_b = sj_encrypt_table(msk, params, table_b, rng)
    clause = _bench_clause(fraction, in_size)
    query = JoinQuery(query_id="bench", clause_a=clause, clause_b=clause)
    tokens = sj_token_gen(
        msk, params, query, rng, table_id_a=table_a.table_id, table_id_b=table_b.table_id
    )
    ids_a = rows_with_attr_value(table_a, "selectivity", sel_value(fraction))
    ids_b = rows_with_attr_value(table_b, "selectivity", sel_value(fraction))
    return [
        BenchRecord(
            experiment,
            "join",
            n_rows,
            fraction,
            in_size,
            rep,
            reps,
            _timed_filtered_join(suite, tokens, enc_a, enc_b, ids_a, ids_b),
        )
        for rep in range(reps)
    ]


def bench_scale(
    suite: PairingSuite,
    row_counts: Sequence[int],
    selectivities: Sequence[float],
    reps: int,
    seed: int,
    t: int = 1,
) -> list[BenchRecord]:
    """Join runtime across table sizes, one series per selectivity."""
    records = []
    for n_rows in row_counts:
        for fraction in selectivities:
            records.extend(
                _join_point(
                    suite, "scale", n_rows, fraction, t, t, reps, seed, selectivities
                )
            )
    return records


def bench_inclause(
    suite: PairingSuite,
    n_rows: int,
    selectivities: Sequence[float],
    t_values: Sequence[int],
    reps: int,
    seed: int,
) -> list[BenchRecord]:
    """Join runtime across IN-clause sizes at a fixed table size."""
    records = []
    for t in t_values:
        for fraction in selectivities:
            records.extend(
                _join_point(
                    suite, "inclause", n_rows, fraction, t, t, reps, seed, selectivities
                )
            )
    return records


def mean_duration(records: Sequence[BenchRecord], **filters) -> float:
    """Average duration over records matching the given field values."""
    chosen = [
        r.duration_s
        for r in records
        if all(getattr(r, key) == value for key, value in filters.items())
    ]
    if not chosen:
        raise ValueError(f"no records match {filters!r}")
    return sum(chosen) / len(chosen)
