"""Shared fixtures: suites, the two-table demo instance, and helpers."""

from __future__ import annotations

import pytest

from securejoin.algebra.bn256 import Bn256Suite, ORDER
from securejoin.algebra.toy import ToySuite
from securejoin.joincore import JoinQuery, PlainRow, PlainTable, SelectionClause, TableSchema

#: 256-bit prime reused as the toy-field modulus so scalar widths match
#: the production suite while exponents stay in the clear.
BIG_PRIME = int(ORDER)


@pytest.fixture(scope="session")
def bn256():
    return Bn256Suite.instance()


@pytest.fixture(scope="session")
def toy101():
    return ToySuite(101)


@pytest.fixture(scope="session")
def toy_big():
    return ToySuite(BIG_PRIME)


class ScriptedRng:
    """Randomness handle replaying a fixed script of randrange outputs."""

    def __init__(self, values):
        self._values = list(values)

    def randrange(self, *args):
        if not self._values:
            raise AssertionError("scripted rng exhausted")
        return self._values.pop(0)


def demo_tables() -> tuple[PlainTable, PlainTable]:
    """Two small demo tables: project teams and their employees.

    Teams has one real attribute (name) padded to m=2; Employees keeps
    (role, employee) so both tables share m=2.
    """
    teams = PlainTable(
        schema=TableSchema(table_id="Teams", join_attr="key", attr_names=("name", "pad")),
        rows=(
            PlainRow(row_id=1, join_value="1", attrs=("Web Application", "-")),
            PlainRow(row_id=2, join_value="2", attrs=("Database", "-")),
        ),
    )
    employees = PlainTable(
        schema=TableSchema(
            table_id="Employees", join_attr="team", attr_names=("role", "employee")
        ),
        rows=(
            PlainRow(row_id=1, join_value="1", attrs=("Programmer", "Hans")),
            PlainRow(row_id=2, join_value="1", attrs=("Tester", "Kaily")),
            PlainRow(row_id=3, join_value="2", attrs=("Programmer", "John")),
            PlainRow(row_id=4, join_value="2", attrs=("Tester", "Sally")),
        ),
    )
    return teams, employees


def demo_queries() -> list[JoinQuery]:
    """The two selection-filtered join queries run against the demo tables."""
    return [
        JoinQuery(
            query_id="t1",
            clause_a=SelectionClause({1: ("Web Application",)}),
            clause_b=SelectionClause({1: ("Tester",)}),
        ),
        JoinQuery(
            query_id="t2",
            clause_a=SelectionClause({1: ("Database",)}),
            clause_b=SelectionClause({1: ("Programmer",)}),
        ),
    ]


@pytest.fixture()
def demo():
    teams, employees = demo_tables()
    return teams, employees, demo_queries()
