"""Pydantic request/response models for the join service."""

from __future__ import annotations

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str = "ok"
    version: str


class TableSummary(BaseModel):
    table_id: str
    suite: str
    m: int
    t: int
    n: int
    row_count: int
    fingerprint: str = Field(description="hex msk fingerprint")


class RowRefModel(BaseModel):
    table_id: str
    row_id: int


class JoinResponse(BaseModel):
    query_id: str
    table_a: str
    table_b: str
    pairs: list[tuple[int, int]]
    groups: list[list[RowRefModel]]
    elapsed_s: float = Field(description="server-side decrypt+match wall clock")


class ObservedLeakageResponse(BaseModel):
    """Everything the (semi-honest) server has learned from tag equalities."""

    tag_count: int
    pair_count: int
    cross_query_equalities: int
    pairs: list[tuple[RowRefModel, RowRefModel]]
