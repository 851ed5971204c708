"""Binary and text codecs for the artifacts that cross the trust boundary.

Encrypted table ("SJT1"): header with format version, group-suite id,
scalar byte length, m, t, n, row count and the msk fingerprint, then
one record per row (row id as u64, n compressed G2 points).  Token
record ("SJK1"): version, suite id, query id, table id, n compressed G1
points, fingerprint; a token-pair file is simply two records back to
back.  Key files ("SJM1" master secret, "SJP1" public params) stay on
the client side.  All integers are little-endian fixed width; strings
are u16-length-prefixed UTF-8.

Match output is line oriented: `pair,<query>,<rowid_A>,<rowid_B>`
records followed by `group,<query>,<index>,<table:row;...>` records.
Tag archives (for the leakage profiler) are CSV.
"""

from __future__ import annotations

import csv
import io
import struct
from typing import BinaryIO, Iterable, TextIO

from ..algebra.suite import PairingSuite, get_suite
from ..errors import FormatError
from ..fhipe import MasterSecretKey, PublicParams, msk_fingerprint
from .model import (
    EncryptedRow,
    EncryptedTable,
    MatchResult,
    QueryTokenPair,
    SchemeParams,
    TableToken,
    Tag,
)

FORMAT_VERSION = 1

_MAGIC_TABLE = b"SJT1"
_MAGIC_TOKEN = b"SJK1"
_MAGIC_MSK = b"SJM1"
_MAGIC_PP = b"SJP1"


# -- low-level helpers -------------------------------------------------------


def _write_str(out: BinaryIO, s: str) -> None:
    data = s.encode("utf-8")
    if len(data) > 0xFFFF:
        raise FormatError("string field too long")
    out.write(struct.pack("<H", len(data)))
    out.write(data)


def _read_exact(src: BinaryIO, count: int) -> bytes:
    data = src.read(count)
    if len(data) != count:
        raise FormatError("truncated file")
    return data


def _read_str(src: BinaryIO) -> str:
    (length,) = struct.unpack("<H", _read_exact(src, 2))
    return _read_exact(src, length).decode("utf-8")


def _read_magic(src: BinaryIO, expected: bytes) -> None:
    magic = _read_exact(src, 4)
    if magic != expected:
        raise FormatError(f"bad magic {magic!r}, expected {expected!r}")
    (version,) = struct.unpack("<H", _read_exact(src, 2))
    if version != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version}")


def _read_suite(src: BinaryIO) -> PairingSuite:
    name = _read_str(src)
    try:
        suite = get_suite(name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    (qlen,) = struct.unpack("<H", _read_exact(src, 2))
    if qlen != suite.scalar_bytes:
        raise FormatError("scalar width does not match suite")
    return suite


def _write_header(out: BinaryIO, magic: bytes, suite: PairingSuite) -> None:
    out.write(magic)
    out.write(struct.pack("<H", FORMAT_VERSION))
    _write_str(out, suite.name)
    out.write(struct.pack("<H", suite.scalar_bytes))


# -- encrypted table ----------------------------------------------------------


def write_encrypted_table(out: BinaryIO, table: EncryptedTable) -> None:
    suite = get_suite(table.suite_name)
    params = table.params
    _write_header(out, _MAGIC_TABLE, suite)
    out.write(struct.pack("<HHIQ", params.m, params.t, params.n, len(table.rows)))
    out.write(table.fingerprint)
    for row in table.rows:
        out.write(struct.pack("<Q", row.row_id))
        for elem in row.cipher:
            out.write(suite.g2_to_bytes(elem))


def read_encrypted_table(src: BinaryIO, table_id: str) -> EncryptedTable:
    """Parse an SJT1 stream; the table id is supplied by the caller
    (it is part of the deployment context, not the wire format)."""
    _read_magic(src, _MAGIC_TABLE)
    suite = _read_suite(src)
    m, t, n, row_count = struct.unpack("<HHIQ", _read_exact(src, 16))
    params = SchemeParams(m=m, t=t)
    if params.n != n:
        raise FormatError("inconsistent dimension in table header")
    fingerprint = _read_exact(src, 32)
    rows = []
    for _ in range(row_count):
        (row_id,) = struct.unpack("<Q", _read_exact(src, 8))
        cipher = []
        for _ in range(n):
            data = _read_exact(src, suite.g2_bytes_len)
            try:
                cipher.append(suite.g2_from_bytes(data))
            except ValueError as exc:
                raise FormatError(f"bad G2 point in row {row_id}: {exc}") from None
        rows.append(EncryptedRow(row_id=row_id, cipher=tuple(cipher)))
    trailing = src.read(1)
    if trailing:
        raise FormatError("trailing bytes after table")
    return EncryptedTable(
        table_id=table_id,
        params=params,
        suite_name=suite.name,
        fingerprint=fingerprint,
        rows=tuple(rows),
    )


def encode_encrypted_table(table: EncryptedTable) -> bytes:
    buf = io.BytesIO()
    write_encrypted_table(buf, table)
    return buf.getvalue()


def decode_encrypted_table(data: bytes, table_id: str) -> EncryptedTable:
    return read_encrypted_table(io.BytesIO(data), table_id)


# -- token pair ----------------------------------------------------------------


def _write_token_record(
    out: BinaryIO, suite: PairingSuite, query_id: str, fingerprint: bytes, token: TableToken
) -> None:
    _write_header(out, _MAGIC_TOKEN, suite)
    _write_str(out, query_id)
    _write_str(out, token.table_id)
    out.write(struct.pack("<I", token.n))
    for elem in token.elems:
        out.write(suite.g1_to_bytes(elem))
    out.write(fingerprint)


def _read_token_record(src: BinaryIO) -> tuple[str, str, bytes, TableToken, str]:
    _read_magic(src, _MAGIC_TOKEN)
    suite = _read_suite(src)
    query_id = _read_str(src)
    table_id = _read_str(src)
    (n,) = struct.unpack("<I", _read_exact(src, 4))
    elems = []
    for _ in range(n):
        data = _read_exact(src, suite.g1_bytes_len)
        try:
            elems.append(suite.g1_from_bytes(data))
        except ValueError as exc:
            raise FormatError(f"bad G1 point in token: {exc}") from None
    fingerprint = _read_exact(src, 32)
    return query_id, table_id, fingerprint, TableToken(table_id, tuple(elems)), suite.name


def write_token_pair(out: BinaryIO, pair: QueryTokenPair) -> None:
    suite = get_suite(pair.suite_name)
    _write_token_record(out, suite, pair.query_id, pair.fingerprint, pair.token_a)
    _write_token_record(out, suite, pair.query_id, pair.fingerprint, pair.token_b)


def read_token_pair(src: BinaryIO) -> QueryTokenPair:
    qid_a, _, fp_a, token_a, suite_a = _read_token_record(src)
    qid_b, _, fp_b, token_b, suite_b = _read_token_record(src)
    if (qid_a, fp_a, suite_a) != (qid_b, fp_b, suite_b):
        raise FormatError("token pair records disagree on query or key")
    trailing = src.read(1)
    if trailing:
        raise FormatError("trailing bytes after token pair")
    return QueryTokenPair(
        query_id=qid_a,
        suite_name=suite_a,
        fingerprint=fp_a,
        token_a=token_a,
        token_b=token_b,
    )


def encode_token_pair(pair: QueryTokenPair) -> bytes:
    buf = io.BytesIO()
    write_token_pair(buf, pair)
    return buf.getvalue()


def decode_token_pair(data: bytes) -> QueryTokenPair:
    return read_token_pair(io.BytesIO(data))


# -- key material ---------------------------------------------------------------


def write_msk(out: BinaryIO, msk: MasterSecretKey, params: SchemeParams) -> None:
    suite = msk.suite
    _write_header(out, _MAGIC_MSK, suite)
    out.write(struct.pack("<HHI", params.m, params.t, params.n))
    for mat in (msk.b, msk.b_star):
        for row in mat:
            for x in row:
                out.write(suite.scalar_to_bytes(x))
    out.write(msk.fingerprint)


def read_msk(src: BinaryIO) -> tuple[MasterSecretKey, SchemeParams]:
    _read_magic(src, _MAGIC_MSK)
    suite = _read_suite(src)
    m, t, n = struct.unpack("<HHI", _read_exact(src, 8))
    params = SchemeParams(m=m, t=t)
    if params.n != n:
        raise FormatError("inconsistent dimension in msk header")

    def read_matrix():
        return tuple(
            tuple(
                suite.scalar_from_bytes(_read_exact(src, suite.scalar_bytes))
                for _ in range(n)
            )
            for _ in range(n)
        )

    try:
        b = read_matrix()
        b_star = read_matrix()
    except ValueError as exc:
        raise FormatError(f"bad scalar in msk: {exc}") from None
    fingerprint = _read_exact(src, 32)
    if fingerprint != msk_fingerprint(suite, n, b, b_star):
        raise FormatError("msk fingerprint check failed")
    msk = MasterSecretKey(
        pp=PublicParams(suite=suite, n=n),
        g1=suite.g1_gen(),
        g2=suite.g2_gen(),
        b=b,
        b_star=b_star,
        fingerprint=fingerprint,
    )
    return msk, params


def write_pp(out: BinaryIO, pp: PublicParams, params: SchemeParams, fingerprint: bytes) -> None:
    _write_header(out, _MAGIC_PP, pp.suite)
    out.write(struct.pack("<HHI", params.m, params.t, params.n))
    out.write(fingerprint)


def read_pp(src: BinaryIO) -> tuple[PublicParams, SchemeParams, bytes]:
    _read_magic(src, _MAGIC_PP)
    suite = _read_suite(src)
    m, t, n = struct.unpack("<HHI", _read_exact(src, 8))
    params = SchemeParams(m=m, t=t)
    if params.n != n:
        raise FormatError("inconsistent dimension in pp header")
    fingerprint = _read_exact(src, 32)
    return PublicParams(suite=suite, n=n), params, fingerprint


# -- match output and tag archives -----------------------------------------------


def format_match_result(result: MatchResult) -> str:
    """Line-oriented rendering: pair records, then the group section."""
    lines = []
    for ra, rb in result.join_pairs:
        lines.append(f"pair,{result.query_id},{ra},{rb}")
    for index, group in enumerate(result.groups):
        members = ";".join(f"{table}:{row}" for table, row in group)
        lines.append(f"group,{result.query_id},{index},{members}")
    return "\n".join(lines) + ("\n" if lines else "")


def parse_match_result(text: str) -> MatchResult:
    pairs = []
    groups = []
    query_id = ""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        kind, qid, *rest = line.split(",")
        query_id = qid
        if kind == "pair":
            ra, rb = rest
            pairs.append((int(ra), int(rb)))
        elif kind == "group":
            _, members = rest
            groups.append(
                tuple(
                    (part.rsplit(":", 1)[0], int(part.rsplit(":", 1)[1]))
                    for part in members.split(";")
                )
            )
        else:
            raise FormatError(f"bad match record on line {lineno}")
    return MatchResult(
        query_id=query_id, join_pairs=tuple(pairs), groups=tuple(groups)
    )


def write_tags_csv(out: TextIO, tags: Iterable[Tag]) -> None:
    writer = csv.writer(out)
    writer.writerow(["query_id", "table_id", "row_id", "tag_hex"])
    for tag in tags:
        writer.writerow([tag.query_id, tag.table_id, tag.row_id, tag.value.hex()])


def read_tags_csv(src: TextIO) -> list[Tag]:
    reader = csv.reader(src)
    header = next(reader, None)
    if header != ["query_id", "table_id", "row_id", "tag_hex"]:
        raise FormatError("bad tag archive header")
    tags = []
    for row in reader:
        if not row:
            continue
        qid, table_id, row_id, tag_hex = row
        tags.append(
            Tag(value=bytes.fromhex(tag_hex), table_id=table_id, row_id=int(row_id), query_id=qid)
        )
    return tags
