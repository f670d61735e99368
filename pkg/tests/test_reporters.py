"""Tests for the CSV reporter."""

import io

import pytest

from src.analyzers.base import Table
from src.reporters.csv_reporter import CsvReporter


@pytest.fixture
def table():
    return Table("demo", ["r", "T"], [{"r": "2/1", "T": "0.5"}, {"r": "4/1"}])


def test_header_and_rows(table):
    stream = io.StringIO()
    assert CsvReporter().write(table, stream) == 2
    assert stream.getvalue() == "r,T\n2/1,0.5\n4/1,\n"


def test_empty_table_has_header_only():
    stream = io.StringIO()
    assert CsvReporter().write(Table("empty", ["a", "b"]), stream) == 0
    assert stream.getvalue() == "a,b\n"


def test_unknown_column_raises(table):
    table.rows.append({"r": "8/1", "extra": 1})
    with pytest.raises(ValueError):
        CsvReporter().write(table, io.StringIO())


def test_write_to_file(table, tmp_path):
    path = tmp_path / "nested" / "out.csv"
    CsvReporter().write_to(table, path)
    assert path.read_bytes() == b"r,T\n2/1,0.5\n4/1,\n"


def test_write_to_stdout(table, capsys):
    CsvReporter().write_to(table)
    assert capsys.readouterr().out.startswith("r,T\n")
