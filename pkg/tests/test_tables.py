import math

import pytest

from bateman_havelock.tables import (
    TableRow,
    compute_cell,
    compute_table,
    method_for,
    reference_row,
    reference_rows,
    rel_error,
)


def test_reference_data_complete():
    rows = reference_rows()
    assert [sum(r["table"] == t for r in rows) for t in (1, 2, 3)] == [6, 6, 8]
    for r in rows:
        assert r["function"] in ("k", "h") and r["a"] > 0 and r["x"] != 0


def test_reference_row_lookup():
    assert reference_row(1, "k", 2.0, 20.0)["exact"] == pytest.approx(-6.5410626744e-2, rel=1e-9)
    assert reference_row(3, "h", 1.75, -15.0)["x_printed"] == -25.0
    assert reference_row(1, "k", 2.0, 21.0) is None


def test_method_for():
    assert [method_for(1, a) for a in (2.0, 0.5, 1.0)] == ["thm1", "thm2", "thm3"]
    assert [method_for(2, a) for a in (2.0, 0.5, 1.0)] == ["thm4", "thm5", "thm6"]
    assert method_for(3, 0.25) == "thm7"


def test_rel_error():
    assert rel_error(2.0, 1.0) == 0.5
    assert rel_error(0.0, 0.0) == 0.0
    assert math.isinf(rel_error(0.0, 1e-300))


def test_even_order_cell():
    row = compute_cell(3, "k", 0.2, -10.0)
    assert row.exact == 0.0 and row.asymptotic == 0.0 and row.rel_error == 0.0


def test_compute_table_order_and_fields():
    rows = compute_table(1)
    assert [(r.a, r.x) for r in rows] == [(r["a"], r["x"]) for r in reference_rows() if r["table"] == 1]
    assert set(rows[0].as_dict()) == set(TableRow.FIELDS)
    assert all(r.paper_exact is not None for r in rows)
    with pytest.raises(ValueError):
        compute_table(4)
