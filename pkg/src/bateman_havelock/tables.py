"""Recomputation of the reference value tables.

Each cell is recomputed from scratch: the exact value from the certified
quadrature oracle, the asymptotic value from the expansion that matches
the cell's regime at the default truncation.  The reference numbers ride
along as comparison columns only.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

from .asymptotics import evaluate
from .oracle import OracleError, certified_value
from .regimes import DEFAULT_TRANSITION_WIDTH

TABLES = (1, 2, 3)


@lru_cache(maxsize=1)
def reference_rows() -> tuple[dict, ...]:
    """Reference rows, in table order (see ``data/reference_tables.json``)."""
    text = resources.files(__package__).joinpath("data/reference_tables.json").read_text()
    return tuple(json.loads(text)["rows"])


def reference_row(table: int, function: str, a: float, x: float) -> dict | None:
    for r in reference_rows():
        if r["table"] == table and r["function"] == function and r["a"] == a and r["x"] == x:
            return r
    return None


@dataclass(frozen=True)
class TableRow:
    function: str
    a: float
    x: float
    exact: float
    asymptotic: float
    rel_error: float
    method: str = ""
    paper_exact: float | None = None
    paper_error: float | None = None

    FIELDS = ("function", "a", "x", "exact", "asymptotic", "rel_error", "method",
              "paper_exact", "paper_error")

    def as_dict(self) -> dict:
        return {f: getattr(self, f) for f in self.FIELDS}


def rel_error(exact: float, asymptotic: float) -> float:
    if exact == 0.0:
        return 0.0 if asymptotic == 0.0 else float("inf")
    return abs(asymptotic - exact) / abs(exact)


def method_for(table: int, a: float) -> str:
    if table == 3:
        return "thm7"
    base = 1 if table == 1 else 4
    if a > 1:
        return f"thm{base}"
    if a < 1:
        return f"thm{base + 1}"
    return f"thm{base + 2}"


class TableCellError(RuntimeError):
    """The oracle failed on a table cell; the message names the cell."""


def compute_cell(table: int, function: str, a: float, x: float, policy=None,
                 precision=None, transition_width: float = DEFAULT_TRANSITION_WIDTH) -> TableRow:
    nu = a * abs(x)
    try:
        exact = certified_value(x, nu, function).value
    except OracleError as e:
        raise TableCellError(f"table {table} cell ({function}, a={a:g}, x={x:g}): {e}") from e
    m = method_for(table, a)
    r = evaluate(m, x, nu, function, policy, precision, transition_width)
    ref = reference_row(table, function, a, x) or {}
    return TableRow(function, a, x, exact, r.value, rel_error(exact, r.value), m,
                    ref.get("exact"), ref.get("error"))


def compute_table(table: int, policy=None, precision=None,
                  transition_width: float = DEFAULT_TRANSITION_WIDTH) -> list[TableRow]:
    """Every cell of ``table`` (1, 2 or 3), in the reference order."""
    if table not in TABLES:
        raise ValueError(f"table must be one of {TABLES}")
    return [compute_cell(table, r["function"], r["a"], r["x"], policy, precision, transition_width)
            for r in reference_rows() if r["table"] == table]
