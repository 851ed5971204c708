"""In-memory server state: encrypted tables and the accumulated tag view.

The server never sees plaintext or key material; it stores what clients
upload and remembers every tag it has produced, which is exactly the
view an honest-but-curious operator would analyze.
"""

from __future__ import annotations

import threading

from ..joincore.model import EncryptedTable, Tag


class JoinServerState:
    def __init__(self):
        self._lock = threading.Lock()
        self._tables: dict[str, EncryptedTable] = {}
        self._tags: list[Tag] = []

    def put_table(self, table: EncryptedTable, force: bool = False) -> None:
        with self._lock:
            if table.table_id in self._tables and not force:
                raise KeyError(f"table {table.table_id!r} already uploaded")
            self._tables[table.table_id] = table

    def get_table(self, table_id: str) -> EncryptedTable:
        with self._lock:
            try:
                return self._tables[table_id]
            except KeyError:
                raise KeyError(f"no table {table_id!r}") from None

    def delete_table(self, table_id: str) -> None:
        with self._lock:
            if table_id not in self._tables:
                raise KeyError(f"no table {table_id!r}")
            del self._tables[table_id]

    def list_tables(self) -> list[EncryptedTable]:
        with self._lock:
            return list(self._tables.values())

    def record_tags(self, tags: list[Tag]) -> None:
        with self._lock:
            self._tags.extend(tags)

    def all_tags(self) -> list[Tag]:
        with self._lock:
            return list(self._tags)
