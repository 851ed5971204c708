"""Command-line surface: client-side key/encrypt/token operations,
file-based joins, leakage comparison, benchmarks, and a thin HTTP
client for the long-running server.

Exit codes: 0 success, 2 usage, 3 malformed artifact or key
fingerprint mismatch, 4 invalid crypto parameter.
"""

from __future__ import annotations

import csv
import functools
import json
import random
import secrets
import sys
from pathlib import Path

import click

from . import __version__, bench as bench_mod
from .algebra.suite import get_suite
from .errors import FormatError, ParameterError
from .joincore import (
    JoinQuery,
    MatchResult,
    PlainRow,
    PlainTable,
    SelectionClause,
    TableSchema,
    sj_encrypt_table,
    sj_match,
    sj_run_query,
    sj_setup,
    sj_token_gen,
)
from .joincore.codec import (
    format_match_result,
    read_encrypted_table,
    read_msk,
    read_pp,
    read_tags_csv,
    read_token_pair,
    write_encrypted_table,
    write_msk,
    write_pp,
    write_tags_csv,
    write_token_pair,
)
from .leakage import BaselineModel, leakage_report
from .tabledata import (
    CUSTOMER_COLUMNS,
    ORDERS_COLUMNS,
    parse_tbl,
    read_table_csv,
)

EXIT_FORMAT = 3
EXIT_PARAMETER = 4

_KEY_DIR_ENV = "SECUREJOIN_KEY_DIR"

_TBL_PRESETS = {"orders": ORDERS_COLUMNS, "customers": CUSTOMER_COLUMNS}


def scheme_errors(fn):
    """Map package exceptions onto the documented exit codes."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except FormatError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_FORMAT)
        except ParameterError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_PARAMETER)

    return wrapper


def _rng(seed: int | None):
    if seed is not None:
        return random.Random(seed)
    return secrets.SystemRandom()


def _key_dir(value: str | None) -> Path:
    import os

    if value:
        return Path(value)
    return Path(os.environ.get(_KEY_DIR_ENV, "keys"))


def _guard_overwrite(path: Path, force: bool) -> None:
    if path.exists() and not force:
        raise click.UsageError(f"{path} exists; pass --force to overwrite")


def _parse_where(expressions: tuple[str, ...]) -> SelectionClause:
    """Parse repeated `attr=<index>:<v1>,<v2>` clauses into one selection."""
    in_lists: dict[int, tuple[str, ...]] = {}
    for expr in expressions:
        body = expr[5:] if expr.startswith("attr=") else expr
        index_part, sep, values_part = body.partition(":")
        if not sep or not index_part.isdigit():
            raise click.UsageError(f"bad WHERE spec {expr!r}; expected attr=<index>:<v1>,<v2>")
        values = tuple(v for v in values_part.split(",") if v != "")
        if not values:
            raise click.UsageError(f"bad WHERE spec {expr!r}: no values")
        index = int(index_part)
        if index in in_lists:
            raise click.UsageError(f"duplicate WHERE attribute {index}")
        in_lists[index] = values
    return SelectionClause(in_lists)


@click.group()
@click.version_option(version=__version__)
def main():
    """Selection-filtered equi-joins over encrypted tables."""


@main.command()
@click.option("--m", type=click.IntRange(min=1), required=True, help="non-join attributes")
@click.option("--t", type=click.IntRange(min=1), required=True, help="max IN-list size")
@click.option("--suite", default="bn256", show_default=True)
@click.option("--out-dir", type=click.Path(path_type=Path), default=None, help=f"key directory (default ${_KEY_DIR_ENV} or ./keys)")
@click.option("--insecure-seed", type=int, default=None, help="deterministic keys, tests only")
@click.option("--force", is_flag=True)
@scheme_errors
def setup(m, t, suite, out_dir, insecure_seed, force):
    """Generate a master secret key and public parameters."""
    suite_obj = get_suite(suite)
    out = _key_dir(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    msk_path = out / "msk.bin"
    pp_path = out / "pp.bin"
    _guard_overwrite(msk_path, force)
    _guard_overwrite(pp_path, force)
    pp, msk, params = sj_setup(suite_obj, m, t, _rng(insecure_seed))
    with open(msk_path, "wb") as fh:
        write_msk(fh, msk, params)
    with open(pp_path, "wb") as fh:
        write_pp(fh, pp, params, msk.fingerprint)
    click.echo(f"wrote {msk_path} and {pp_path} (n={params.n}, fingerprint={msk.fingerprint.hex()[:16]}...)")


def _load_plain_table(
    table_path: Path, table_id: str, fmt: str, columns: str | None,
    join_attr: str | None, attrs: str | None, max_rows: int | None,
) -> PlainTable:
    if fmt == "auto":
        fmt = "tbl" if table_path.suffix == ".tbl" else "csv"
    if fmt == "csv":
        with open(table_path, newline="") as fh:
            return read_table_csv(fh, table_id)
    if columns in _TBL_PRESETS:
        column_names = _TBL_PRESETS[columns]
    elif columns:
        column_names = tuple(c.strip() for c in columns.split(","))
    else:
        raise click.UsageError("--columns (or a preset name) is required for .tbl input")
    if not join_attr or not attrs:
        raise click.UsageError("--join-attr and --attrs are required for .tbl input")
    with open(table_path) as fh:
        return parse_tbl(
            fh,
            column_names,
            join_attr,
            tuple(a.strip() for a in attrs.split(",")),
            table_id,
            max_rows=max_rows,
        )


def _pad_table(table: PlainTable, m: int) -> PlainTable:
    """Pad a narrower schema with constant dummy attributes up to m."""
    have = table.schema.m
    if have == m:
        return table
    if have > m:
        raise ParameterError(f"table has {have} attributes but the key supports m={m}")
    extra = tuple(f"pad{i}" for i in range(have + 1, m + 1))
    schema = TableSchema(
        table_id=table.schema.table_id,
        join_attr=table.schema.join_attr,
        attr_names=table.schema.attr_names + extra,
    )
    rows = tuple(
        PlainRow(row_id=r.row_id, join_value=r.join_value, attrs=r.attrs + ("-",) * len(extra))
        for r in table.rows
    )
    return PlainTable(schema=schema, rows=rows)


@main.command()
@click.option("--msk", "msk_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--table", "table_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--table-id", required=True)
@click.option("--format", "fmt", type=click.Choice(["auto", "csv", "tbl"]), default="auto")
@click.option("--columns", default=None, help="comma list or preset (orders, customers)")
@click.option("--join-attr", default=None)
@click.option("--attrs", default=None, help="comma list of non-join attributes to carry")
@click.option("--max-rows", type=int, default=None, help="deterministic prefix truncation")
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@click.option("--insecure-seed", type=int, default=None)
@click.option("--force", is_flag=True)
@scheme_errors
def encrypt(msk_path, table_path, table_id, fmt, columns, join_attr, attrs, max_rows, out_path, insecure_seed, force):
    """Encrypt a plaintext table into an SJT1 file (client side)."""
    _guard_overwrite(out_path, force)
    msk_file = msk_path or (_key_dir(None) / "msk.bin")
    with open(msk_file, "rb") as fh:
        msk, params = read_msk(fh)
    table = _load_plain_table(table_path, table_id, fmt, columns, join_attr, attrs, max_rows)
    table = _pad_table(table, params.m)
    enc = sj_encrypt_table(msk, params, table, _rng(insecure_seed))
    with open(out_path, "wb") as fh:
        write_encrypted_table(fh, enc)
    click.echo(f"encrypted {len(enc.rows)} rows -> {out_path}")


@main.command()
@click.option("--msk", "msk_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--query-id", required=True)
@click.option("--where-a", multiple=True, help="attr=<index>:<v1>,<v2> for the first table")
@click.option("--where-b", multiple=True, help="same for the second table")
@click.option("--table-id-a", default="A", show_default=True)
@click.option("--table-id-b", default="B", show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@click.option("--insecure-seed", type=int, default=None)
@click.option("--force", is_flag=True)
@scheme_errors
def token(msk_path, query_id, where_a, where_b, table_id_a, table_id_b, out_path, insecure_seed, force):
    """Generate a fresh token pair for one join query (client side)."""
    _guard_overwrite(out_path, force)
    msk_file = msk_path or (_key_dir(None) / "msk.bin")
    with open(msk_file, "rb") as fh:
        msk, params = read_msk(fh)
    query = JoinQuery(
        query_id=query_id, clause_a=_parse_where(where_a), clause_b=_parse_where(where_b)
    )
    pair = sj_token_gen(
        msk, params, query, _rng(insecure_seed), table_id_a=table_id_a, table_id_b=table_id_b
    )
    with open(out_path, "wb") as fh:
        write_token_pair(fh, pair)
    click.echo(f"wrote token pair for query {query_id!r} -> {out_path}")


@main.command()
@click.option("--pp", "pp_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--token", "token_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--enc-a", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--enc-b", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@click.option("--tags-out", type=click.Path(path_type=Path), default=None, help="tag archive for the leakage profiler")
@click.option("--force", is_flag=True)
@scheme_errors
def join(pp_path, token_path, enc_a, enc_b, out_path, tags_out, force):
    """Decrypt both tables under a token pair and hash-join the tags (server side)."""
    _guard_overwrite(out_path, force)
    if tags_out is not None:
        _guard_overwrite(tags_out, force)
    pp_file = pp_path or (_key_dir(None) / "pp.bin")
    with open(pp_file, "rb") as fh:
        _, _, pp_fingerprint = read_pp(fh)
    with open(token_path, "rb") as fh:
        tokens = read_token_pair(fh)
    with open(enc_a, "rb") as fh:
        table_a = read_encrypted_table(fh, tokens.token_a.table_id)
    with open(enc_b, "rb") as fh:
        table_b = read_encrypted_table(fh, tokens.token_b.table_id)
    if tokens.fingerprint != pp_fingerprint:
        raise FormatError("token was not generated under the supplied public parameters")
    suite = get_suite(table_a.suite_name)
    tags_a, tags_b = sj_run_query(suite, tokens, table_a, table_b)
    result = sj_match(tags_a, tags_b)
    with open(out_path, "w") as fh:
        fh.write(format_match_result(result))
    if tags_out is not None:
        with open(tags_out, "w", newline="") as fh:
            write_tags_csv(fh, tags_a + tags_b)
    click.echo(f"{len(result.join_pairs)} join pairs -> {out_path}")


def _load_workload(path: Path) -> list[JoinQuery]:
    with open(path) as fh:
        spec = json.load(fh)
    queries = []
    for entry in spec.get("queries", []):
        queries.append(
            JoinQuery(
                query_id=entry["query_id"],
                clause_a=SelectionClause(
                    {int(k): tuple(v) for k, v in entry.get("where_a", {}).items()}
                ),
                clause_b=SelectionClause(
                    {int(k): tuple(v) for k, v in entry.get("where_b", {}).items()}
                ),
            )
        )
    return queries


@main.command("leak-compare")
@click.option("--table-a", type=click.Path(exists=True, path_type=Path), required=True, help="canonical CSV")
@click.option("--table-b", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--table-id-a", default="A", show_default=True)
@click.option("--table-id-b", default="B", show_default=True)
@click.option("--workload", type=click.Path(exists=True, path_type=Path), required=True, help="JSON query list")
@click.option("--tags", "tag_files", type=click.Path(exists=True, path_type=Path), multiple=True, help="tag archives from executed joins")
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None, help="CSV report (default stdout)")
@click.option("--text", is_flag=True, help="also print the human-readable table")
@scheme_errors
def leak_compare(table_a, table_b, table_id_a, table_id_b, workload, tag_files, out_path, text):
    """Compare the scheme's leakage against the baseline models."""
    with open(table_a, newline="") as fh:
        plain_a = read_table_csv(fh, table_id_a)
    with open(table_b, newline="") as fh:
        plain_b = read_table_csv(fh, table_id_b)
    queries = _load_workload(workload)
    observed = None
    if tag_files:
        observed = []
        for path in tag_files:
            with open(path, newline="") as fh:
                observed.extend(read_tags_csv(fh))
    report = leakage_report(
        plain_a, plain_b, queries, models=tuple(BaselineModel), observed_tags=observed
    )
    rows = report.to_csv_rows()
    if out_path is None:
        writer = csv.writer(sys.stdout)
        writer.writerows(rows)
    else:
        with open(out_path, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
        click.echo(f"report -> {out_path}")
    if text:
        click.echo(report.render_text())


def _parse_floats(text: str) -> list[float]:
    return [float(x) for x in text.split(",") if x.strip()]


def _parse_ints(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip()]


@main.command()
@click.option("--mode", type=click.Choice(["crypto", "scale", "inclause"]), required=True)
@click.option("--suite", default="bn256", show_default=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@click.option("--reps", type=int, default=25, show_default=True)
@click.option("--seed", type=int, default=1, show_default=True)
@click.option("--t-values", default="1,2,3,4,5,6,7,8,9,10", show_default=True)
@click.option("--rows", default="1000", show_default=True, help="row counts (scale mode: comma list)")
@click.option("--selectivities", default="0.01,0.02,0.04,0.08", show_default=True)
@click.option("--force", is_flag=True)
@scheme_errors
def bench(mode, suite, out_path, reps, seed, t_values, rows, selectivities, force):
    """Run a benchmark sweep and write per-repetition records as CSV."""
    _guard_overwrite(out_path, force)
    suite_obj = get_suite(suite)
    sels = _parse_floats(selectivities)
    if mode == "crypto":
        records = bench_mod.bench_crypto(suite_obj, _parse_ints(t_values), reps, seed)
    elif mode == "scale":
        records = bench_mod.bench_scale(suite_obj, _parse_ints(rows), sels, reps, seed)
    else:
        row_counts = _parse_ints(rows)
        if len(row_counts) != 1:
            raise click.UsageError("inclause mode takes a single --rows value")
        records = bench_mod.bench_inclause(
            suite_obj, row_counts[0], sels, _parse_ints(t_values), reps, seed
        )
    with open(out_path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(bench_mod.CSV_HEADER)
        for record in records:
            writer.writerow(record.as_csv_row())
    click.echo(f"{len(records)} records -> {out_path}")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the join server (holds ciphertexts only, never keys)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


@main.command()
@click.option("--server", default="http://127.0.0.1:8000", show_default=True)
@click.option("--table-id", required=True)
@click.option("--enc", "enc_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--force", is_flag=True)
def upload(server, table_id, enc_path, force):
    """Upload an encrypted table to the server."""
    import httpx

    with open(enc_path, "rb") as fh:
        data = fh.read()
    response = httpx.post(
        f"{server}/tables/{table_id}",
        params={"force": str(force).lower()},
        content=data,
        headers={"content-type": "application/octet-stream"},
        timeout=120.0,
    )
    if response.status_code >= 400:
        click.echo(f"error: {response.json().get('detail', response.text)}", err=True)
        sys.exit(EXIT_FORMAT)
    summary = response.json()
    click.echo(f"uploaded {summary['row_count']} rows as {summary['table_id']!r}")


@main.command()
@click.option("--server", default="http://127.0.0.1:8000", show_default=True)
@click.option("--token", "token_path", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--table-a", required=True)
@click.option("--table-b", required=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None)
@click.option("--force", is_flag=True)
def query(server, token_path, table_a, table_b, out_path, force):
    """Submit a token pair; receive and store the match result."""
    import httpx

    if out_path is not None:
        _guard_overwrite(out_path, force)
    with open(token_path, "rb") as fh:
        data = fh.read()
    response = httpx.post(
        f"{server}/joins",
        params={"table_a": table_a, "table_b": table_b},
        content=data,
        headers={"content-type": "application/octet-stream"},
        timeout=600.0,
    )
    if response.status_code >= 400:
        click.echo(f"error: {response.json().get('detail', response.text)}", err=True)
        sys.exit(EXIT_FORMAT)
    body = response.json()
    result = MatchResult(
        query_id=body["query_id"],
        join_pairs=tuple((a, b) for a, b in body["pairs"]),
        groups=tuple(
            tuple((member["table_id"], member["row_id"]) for member in group)
            for group in body["groups"]
        ),
    )
    text = format_match_result(result)
    if out_path is None:
        click.echo(text, nl=False)
    else:
        with open(out_path, "w") as fh:
            fh.write(text)
        click.echo(f"{len(result.join_pairs)} join pairs -> {out_path}")


@main.command("server-leakage")
@click.option("--server", default="http://127.0.0.1:8000", show_default=True)
def server_leakage(server):
    """Show the equality pairs the server has accumulated so far."""
    import httpx

    response = httpx.get(f"{server}/leakage/observed", timeout=60.0)
    response.raise_for_status()
    click.echo(json.dumps(response.json(), indent=2))


if __name__ == "__main__":
    main()
