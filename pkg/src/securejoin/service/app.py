"""FastAPI application exposing the untrusted server role.

Clients upload encrypted tables and submit per-query token pairs; the
server decrypts to tags, hash-joins them, and returns the matches.  The
master secret never crosses this boundary: the endpoints consume only
the binary artifacts defined in the codec module.  A leakage endpoint
reports the equality pairs the server has been able to accumulate,
which is the quantity the scheme is designed to minimize.
"""

from __future__ import annotations

import time

from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from .. import __version__
from ..algebra.suite import get_suite
from ..errors import FingerprintMismatchError, FormatError, ParameterError
from ..joincore import sj_match, sj_run_query
from ..joincore.codec import decode_encrypted_table, decode_token_pair
from ..joincore.model import EncryptedTable
from ..leakage import cross_query_tag_equalities, observed_leakage
from .models import (
    HealthResponse,
    JoinResponse,
    ObservedLeakageResponse,
    RowRefModel,
    TableSummary,
)
from .state import JoinServerState


def _summary(table: EncryptedTable) -> TableSummary:
    return TableSummary(
        table_id=table.table_id,
        suite=table.suite_name,
        m=table.params.m,
        t=table.params.t,
        n=table.params.n,
        row_count=len(table.rows),
        fingerprint=table.fingerprint.hex(),
    )


def create_app(state: JoinServerState | None = None) -> FastAPI:
    state = state if state is not None else JoinServerState()
    app = FastAPI(title="securejoin server", version=__version__)
    app.state.join_state = state

    @app.exception_handler(FormatError)
    async def _format_error(_request: Request, exc: FormatError):
        code = 409 if isinstance(exc, FingerprintMismatchError) else 400
        return JSONResponse(status_code=code, content={"detail": str(exc)})

    @app.exception_handler(ParameterError)
    async def _parameter_error(_request: Request, exc: ParameterError):
        return JSONResponse(status_code=422, content={"detail": str(exc)})

    @app.exception_handler(KeyError)
    async def _key_error(_request: Request, exc: KeyError):
        detail = exc.args[0] if exc.args else "not found"
        code = 409 if "already uploaded" in str(detail) else 404
        return JSONResponse(status_code=code, content={"detail": str(detail)})

    @app.get("/health", response_model=HealthResponse)
    async def health() -> HealthResponse:
        return HealthResponse(version=__version__)

    @app.get("/tables", response_model=list[TableSummary])
    async def list_tables() -> list[TableSummary]:
        return [_summary(t) for t in state.list_tables()]

    @app.post("/tables/{table_id}", response_model=TableSummary, status_code=201)
    async def upload_table(
        table_id: str, request: Request, force: bool = Query(default=False)
    ) -> TableSummary:
        data = await request.body()
        table = decode_encrypted_table(data, table_id)
        state.put_table(table, force=force)
        return _summary(table)

    @app.delete("/tables/{table_id}", status_code=204)
    async def delete_table(table_id: str) -> Response:
        state.delete_table(table_id)
        return Response(status_code=204)

    @app.post("/joins", response_model=JoinResponse)
    async def run_join(
        request: Request,
        table_a: str = Query(...),
        table_b: str = Query(...),
    ) -> JoinResponse:
        tokens = decode_token_pair(await request.body())
        enc_a = state.get_table(table_a)
        enc_b = state.get_table(table_b)
        suite = get_suite(enc_a.suite_name)
        start = time.perf_counter()
        tags_a, tags_b = sj_run_query(suite, tokens, enc_a, enc_b)
        result = sj_match(tags_a, tags_b)
        elapsed = time.perf_counter() - start
        state.record_tags(tags_a + tags_b)
        return JoinResponse(
            query_id=result.query_id,
            table_a=table_a,
            table_b=table_b,
            pairs=list(result.join_pairs),
            groups=[
                [RowRefModel(table_id=t, row_id=r) for t, r in group]
                for group in result.groups
            ],
            elapsed_s=elapsed,
        )

    @app.get("/leakage/observed", response_model=ObservedLeakageResponse)
    async def observed() -> ObservedLeakageResponse:
        tags = state.all_tags()
        profile = observed_leakage(tags)
        return ObservedLeakageResponse(
            tag_count=len(tags),
            pair_count=profile.count,
            cross_query_equalities=cross_query_tag_equalities(tags),
            pairs=[
                (
                    RowRefModel(table_id=p.lo.table_id, row_id=p.lo.row_id),
                    RowRefModel(table_id=p.hi.table_id, row_id=p.hi.row_id),
                )
                for p in profile.sorted_pairs()
            ],
        )

    return app
