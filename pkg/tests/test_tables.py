"""Tests for the report analyses run on transcripts."""

import pytest
from gmpy2 import mpq

from src.analyzers.tables import (
    ANALYZERS,
    dyadic_radii,
    get_analyzer,
    param_int,
    param_radii,
    run_analysis,
)
from src.audit.document import load_document


@pytest.fixture(scope="module")
def document(linear_transcript):
    return load_document(linear_transcript)


def test_registry():
    assert set(ANALYZERS) == {
        "characteristic",
        "zeros",
        "covers",
        "witness",
        "growth",
        "torus",
        "projective",
        "gap",
    }
    assert get_analyzer("torus", nodes=64).nodes == 64
    with pytest.raises(ValueError):
        get_analyzer("nope")


def test_param_helpers():
    assert param_radii({"radii": "2, 8,1/2"}, []) == [2, 8, mpq(1, 2)]
    assert param_radii({}, [3]) == [3]
    assert param_int({"kmax": "3"}, "kmax", 4) == 3
    with pytest.raises(ValueError):
        param_int({"kmax": "three"}, "kmax", 4)


def test_dyadic_radii_are_thinned():
    assert dyadic_radii(16) == [2, 4, 8, 16]
    assert len(dyadic_radii(2 ** 200)) <= 32


def test_characteristic_table(document):
    table = run_analysis("characteristic", document, {"radii": "2,4"}, nodes=64)
    assert table.columns == ["r", "T", "tol", "log_envelope"]
    assert [row["r"] for row in table.rows] == ["2/1", "4/1"]
    values = [float(row["T"]) for row in table.rows]
    assert values[0] <= values[1]


def test_growth_table(document):
    table = run_analysis("growth", document, {})
    assert [row["r"] for row in table.rows] == ["1/1", "10/1", "100/1", "1000/1"]
    assert all(row["ok"] for row in table.rows)


def test_witness_table(document):
    table = run_analysis("witness", document, {})
    assert len(table.rows) == 1
    assert table.columns == list(table.rows[0])


def test_torus_table(document):
    table = run_analysis("torus", document, {"radii": "2"}, nodes=64)
    row = table.rows[0]
    assert float(row["difference"]) <= 1e-6 * max(1.0, abs(float(row["T"])))
    assert table.columns == ["r", "T", "tol", "radial", "area", "difference"]


def test_zeros_table_counts_first(document):
    table = run_analysis("zeros", document, {"radius": "4"})
    assert table.rows[0]["region"] == "disc(0, 4/1)"
    assert table.rows[0]["count"] == sum(row["multiplicity"] for row in table.rows[1:])


def test_single_variable_component_range(document):
    with pytest.raises(ValueError):
        run_analysis("zeros", document, {"component": "2"})
