"""Table ingestion and test-instance generation.

Handles pipe-delimited `.tbl` files (trailing delimiter, TPC-H style),
canonical cell normalization, synthesis of a benchmark selectivity
column, CSV round-tripping of canonical tables, and seeded random
instances for the pipeline/oracle equivalence tests.

Canonical form: cells are stripped of surrounding whitespace; cells
that look like plain decimal numerals are normalized (no leading
zeros, no trailing fractional zeros, no dangling point, no negative
zero) so `0.50` and `0.5` embed identically.  Case is preserved.
"""

from __future__ import annotations

import csv
import random
import re
from typing import Sequence, TextIO

from .errors import FormatError, ParameterError
from .joincore.model import (
    JoinQuery,
    PlainRow,
    PlainTable,
    SelectionClause,
    TableSchema,
)

# Column layouts of the two TPC-H tables used by the benchmark harness.
ORDERS_COLUMNS = (
    "orderkey",
    "custkey",
    "orderstatus",
    "totalprice",
    "orderdate",
    "orderpriority",
    "clerk",
    "shippriority",
    "comment",
)
CUSTOMER_COLUMNS = (
    "custkey",
    "name",
    "address",
    "nationkey",
    "phone",
    "acctbal",
    "mktsegment",
    "comment",
)

_NUMERIC_RE = re.compile(r"^[+-]?\d+(\.\d+)?$")


def normalize_cell(raw: str) -> str:
    """Canonical form of one cell; injective on values that differ."""
    cell = raw.strip()
    if not _NUMERIC_RE.match(cell):
        return cell
    sign = ""
    body = cell
    if body[0] in "+-":
        sign = "-" if body[0] == "-" else ""
        body = body[1:]
    if "." in body:
        intpart, frac = body.split(".")
        frac = frac.rstrip("0")
    else:
        intpart, frac = body, ""
    intpart = intpart.lstrip("0") or "0"
    out = intpart + ("." + frac if frac else "")
    if out == "0":
        return "0"
    return sign + out


def parse_tbl(
    source: TextIO,
    columns: Sequence[str],
    join_attr: str,
    attr_names: Sequence[str],
    table_id: str,
    max_rows: int | None = None,
) -> PlainTable:
    """Load a pipe-delimited table, keeping the join column and the
    selected non-join attributes; row ids are assigned 1..N in file
    order.  `max_rows` truncates deterministically (scale-down knob)."""
    col_index = {name: i for i, name in enumerate(columns)}
    if join_attr not in col_index:
        raise ParameterError(f"join attribute {join_attr!r} not in columns")
    for name in attr_names:
        if name not in col_index:
            raise ParameterError(f"attribute {name!r} not in columns")
    join_idx = col_index[join_attr]
    attr_idx = [col_index[name] for name in attr_names]

    rows = []
    for lineno, line in enumerate(source, start=1):
        line = line.rstrip("\n").rstrip("\r")
        if not line:
            continue
        if not line.endswith("|"):
            raise FormatError(f"line {lineno}: missing trailing delimiter")
        cells = line[:-1].split("|")
        if len(cells) != len(columns):
            raise FormatError(
                f"line {lineno}: expected {len(columns)} fields, found {len(cells)}"
            )
        row_id = len(rows) + 1
        rows.append(
            PlainRow(
                row_id=row_id,
                join_value=normalize_cell(cells[join_idx]),
                attrs=tuple(normalize_cell(cells[i]) for i in attr_idx),
            )
        )
        if max_rows is not None and len(rows) >= max_rows:
            break
    schema = TableSchema(table_id=table_id, join_attr=join_attr, attr_names=tuple(attr_names))
    return PlainTable(schema=schema, rows=tuple(rows))


def synthesize_selectivity(
    table: PlainTable,
    spec: Sequence[tuple[str, float]],
    seed: int,
    attr_name: str = "selectivity",
) -> PlainTable:
    """Append a selection column assigning each (value, fraction) to
    floor(fraction * n) rows via a seeded shuffle; leftover rows get
    per-row unique filler values that no benchmark query selects."""
    total = 0.0
    for value, fraction in spec:
        if not 0.0 < fraction <= 1.0:
            raise ParameterError(f"fraction {fraction} for {value!r} out of (0, 1]")
        total += fraction
    if total > 1.0 + 1e-9:
        raise ParameterError("selectivity fractions sum to more than 1")

    n = len(table.rows)
    order = list(range(n))
    random.Random(seed).shuffle(order)
    assigned: dict[int, str] = {}
    cursor = 0
    for value, fraction in spec:
        count = int(fraction * n)
        for pos in order[cursor : cursor + count]:
            assigned[pos] = value
        cursor += count

    new_rows = []
    for pos, row in enumerate(table.rows):
        value = assigned.get(pos, f"__filler_{row.row_id}")
        new_rows.append(
            PlainRow(row_id=row.row_id, join_value=row.join_value, attrs=row.attrs + (value,))
        )
    schema = TableSchema(
        table_id=table.schema.table_id,
        join_attr=table.schema.join_attr,
        attr_names=table.schema.attr_names + (attr_name,),
    )
    return PlainTable(schema=schema, rows=tuple(new_rows))


def gen_random_instance(
    seed: int,
    n_rows: int,
    m: int,
    t: int,
    join_domain: int,
    attr_domain: int = 6,
) -> tuple[PlainTable, PlainTable, JoinQuery]:
    """Deterministic random two-table instance plus a join query.

    Join values come from a small shared domain to force matches;
    each attribute is constrained with probability 1/2 by an IN list
    of 1..t domain values.
    """
    rng = random.Random(seed)

    def make_table(table_id: str) -> PlainTable:
        schema = TableSchema(
            table_id=table_id,
            join_attr="jk",
            attr_names=tuple(f"attr{i}" for i in range(1, m + 1)),
        )
        rows = tuple(
            PlainRow(
                row_id=r,
                join_value=f"j{rng.randrange(join_domain)}",
                attrs=tuple(f"v{i}_{rng.randrange(attr_domain)}" for i in range(1, m + 1)),
            )
            for r in range(1, n_rows + 1)
        )
        return PlainTable(schema=schema, rows=rows)

    def make_clause() -> SelectionClause:
        in_lists = {}
        for i in range(1, m + 1):
            if rng.random() < 0.5:
                size = rng.randint(1, t)
                values = rng.sample(range(attr_domain), min(size, attr_domain))
                in_lists[i] = tuple(f"v{i}_{v}" for v in values)
        return SelectionClause(in_lists)

    table_a = make_table("A")
    table_b = make_table("B")
    query = JoinQuery(query_id=f"q{seed}", clause_a=make_clause(), clause_b=make_clause())
    return table_a, table_b, query


def write_table_csv(out: TextIO, table: PlainTable) -> None:
    """Canonical dump: header row, then row_id, join value, attributes."""
    writer = csv.writer(out)
    writer.writerow(["row_id", table.schema.join_attr, *table.schema.attr_names])
    for row in table.rows:
        writer.writerow([row.row_id, row.join_value, *row.attrs])


def read_table_csv(src: TextIO, table_id: str) -> PlainTable:
    reader = csv.reader(src)
    header = next(reader, None)
    if not header or len(header) < 3 or header[0] != "row_id":
        raise FormatError("bad canonical table header")
    schema = TableSchema(table_id=table_id, join_attr=header[1], attr_names=tuple(header[2:]))
    rows = []
    for cells in reader:
        if not cells:
            continue
        if len(cells) != len(header):
            raise FormatError(f"row {len(rows) + 1}: wrong field count")
        rows.append(
            PlainRow(
                row_id=int(cells[0]),
                join_value=normalize_cell(cells[1]),
                attrs=tuple(normalize_cell(c) for c in cells[2:]),
            )
        )
    return PlainTable(schema=schema, rows=tuple(rows))


def rows_with_attr_value(table: PlainTable, attr_name: str, value: str) -> list[int]:
    """Row ids whose named attribute equals the value (pre-filter helper)."""
    try:
        idx = table.schema.attr_names.index(attr_name)
    except ValueError:
        raise ParameterError(f"attribute {attr_name!r} not in schema") from None
    return [row.row_id for row in table.rows if row.attrs[idx] == value]
