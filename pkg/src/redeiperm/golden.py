"""Golden tables: the printed permutation-polynomial tables transcribed
verbatim as JSON, plus a list of known misprints in them."""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Optional

from .construct import (
    ConstructionParams,
    SparsePoly,
    TableCell,
    brute_force_is_permutation,
    generate_table,
    theorem_predicate,
)
from .field import ONE, FieldContext, make_context

# table number -> (t, family, n values, m values)
TABLES = {
    1: (3, "M", (1, 2, 4, 5, 8, 10, 11, 13, 16, 17, 19, 20), range(1, 8)),
    2: (3, "N", (1, 4, 10, 13, 16, 19), range(1, 8)),
    3: (5, "M", (7, 13, 34), range(1, 4)),
    4: (5, "N", (7, 13, 34), range(1, 4)),
    5: (7, "M", (11, 20, 56, 134), range(1, 4)),
    6: (7, "N", (7, 22, 56, 136), range(1, 4)),
}

CELL_KEYS = ("t", "n", "m", "family", "status")


def _data_text(*parts: str) -> str:
    return resources.files("redeiperm").joinpath("data", *parts).read_text()


def load_golden(table: int) -> list[dict]:
    return json.loads(_data_text("golden", f"table{table}.json"))


def load_errata() -> list[dict]:
    return json.loads(_data_text("errata.json"))


def generate_reference_table(table: int, ctx: Optional[FieldContext] = None) -> list[TableCell]:
    t, family, ns, ms = TABLES[table]
    ctx = ctx or make_context(t)
    return generate_table(ctx, family, ns, ms)


@dataclass
class CellDiff:
    key: tuple
    expected: Optional[dict]
    actual: Optional[dict]

    def __str__(self) -> str:
        t, n, m, fam = self.key
        return f"t={t} family={fam} n={n} m={m}: expected {_short(self.expected)}, got {_short(self.actual)}"


def _short(cell: Optional[dict]) -> str:
    if cell is None:
        return "<missing>"
    if cell["status"] == "permutes":
        return cell["poly"]
    return f"--- ({cell.get('reason')})"


def _key(cell: dict) -> tuple:
    return (cell["t"], cell["n"], cell["m"], cell["family"])


def _same(a: dict, b: dict) -> bool:
    if a["status"] != b["status"]:
        return False
    if a["status"] == "permutes":
        return list(a["exponents"]) == list(b["exponents"])
    return True


def diff_cells(expected: list[dict], actual: list[dict]) -> list[CellDiff]:
    """Cell-by-cell comparison keyed on (t, n, m, family); order-insensitive."""
    exp = {_key(c): c for c in expected}
    act = {_key(c): c for c in actual}
    diffs = []
    for k in sorted(set(exp) | set(act)):
        e, a = exp.get(k), act.get(k)
        if e is None or a is None or not _same(e, a):
            diffs.append(CellDiff(k, e, a))
    return diffs


def check_erratum(entry: dict) -> Optional[str]:
    """Re-derive one known misprint.  Returns None if it is confirmed, else a message."""
    t, fam, n, m = entry["t"], entry["family"], entry["n"], entry["m"]
    golden = {_key(c): c for c in load_golden(entry["table"])}
    printed = golden.get((t, n, m, fam))
    if printed is None or printed.get("exponents") != entry["printed"]:
        return f"erratum {entry['table']}/{n}/{m}: golden cell does not hold the listed printed value"
    params = ConstructionParams(t, n, m, fam)
    ctx = make_context(t)
    cell = generate_table(ctx, fam, [n], [m])[0]
    if entry["computed"] is None:
        if cell.status != "excluded":
            return f"erratum {entry['table']}/{n}/{m}: construction now yields a polynomial"
    elif cell.poly is None or cell.poly.exponents != entry["computed"]:
        return f"erratum {entry['table']}/{n}/{m}: computed value differs from the recorded one"
    if entry["check"] == "printed_not_permutation":
        p = SparsePoly(ctx, {e: ONE for e in entry["printed"]})
        if brute_force_is_permutation(ctx, p):
            return f"erratum {entry['table']}/{n}/{m}: printed polynomial is a permutation after all"
    elif entry["check"] == "copied_from_table":
        src = {(c["n"], c["m"]): c for c in load_golden(entry["source_table"])}.get((n, m))
        if src is None or src.get("exponents") != entry["printed"]:
            return f"erratum {entry['table']}/{n}/{m}: printed row does not match table {entry['source_table']}"
        if theorem_predicate(params):
            return f"erratum {entry['table']}/{n}/{m}: construction applies to these parameters"
    else:
        return f"unknown erratum check {entry['check']!r}"
    return None


def errata_keys(table: int) -> set[tuple]:
    return {
        (e["t"], e["n"], e["m"], e["family"]) for e in load_errata() if e["table"] == table
    }


def render_table_text(cells: list[dict]) -> str:
    """One line per cell: ``t=3 M n=5 m=2: x^51 + x^30 + x^23`` or ``... : --- (reason)``."""
    lines = []
    for c in cells:
        head = f"t={c['t']} {c['family']} n={c['n']} m={c['m']}"
        if c["status"] == "permutes":
            lines.append(f"{head}: {c['poly']}")
        else:
            lines.append(f"{head}: --- ({c['reason']})")
    return "\n".join(lines) + "\n"


def parse_table_text(text: str) -> list[dict]:
    """Inverse of ``render_table_text``."""
    cells = []
    for line in text.splitlines():
        if not line.strip():
            continue
        head, body = line.split(": ", 1)
        t, family, n, m = head.split()
        cell = {"t": int(t[2:]), "n": int(n[2:]), "m": int(m[2:]), "family": family}
        if body.startswith("---"):
            cell["status"] = "excluded"
            cell["reason"] = body[len("--- ("):-1]
        else:
            exps = [_parse_exp(term) for term in body.split(" + ")]
            cell.update(status="permutes", poly=body, exponents=exps)
        cells.append(cell)
    return cells


def _parse_exp(term: str) -> int:
    term = term.strip()
    if term == "1":
        return 0
    if term == "x":
        return 1
    if not term.startswith("x^"):
        raise ValueError(f"cannot parse term {term!r}")
    return int(term[2:])


TABLE_CELL_SCHEMA = {
    "type": "object",
    "required": ["t", "n", "m", "family", "status"],
    "properties": {
        "t": {"type": "integer", "minimum": 3},
        "n": {"type": "integer", "minimum": 1},
        "m": {"type": "integer", "minimum": 1},
        "family": {"enum": ["M", "N"]},
        "status": {"enum": ["permutes", "excluded"]},
        "poly": {"type": "string"},
        "exponents": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "reason": {"type": "string"},
    },
    "oneOf": [
        {"properties": {"status": {"const": "permutes"}}, "required": ["poly", "exponents"]},
        {"properties": {"status": {"const": "excluded"}}, "required": ["reason"]},
    ],
    "additionalProperties": False,
}
