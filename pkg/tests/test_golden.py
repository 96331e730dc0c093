import json

import jsonschema
import pytest

from redeiperm import golden
from redeiperm.construct import SparsePoly, brute_force_is_permutation
from redeiperm.field import ONE, make_context


@pytest.mark.parametrize("table,count,dashes", [(1, 84, 12), (2, 42, 6), (3, 9, 0), (4, 9, 0), (5, 12, 0), (6, 12, 0)])
def test_golden_files_shape(table, count, dashes):
    cells = golden.load_golden(table)
    assert len(cells) == count
    assert sum(c["status"] == "excluded" for c in cells) == dashes
    for c in cells:
        jsonschema.validate(c, golden.TABLE_CELL_SCHEMA)


def test_printed_misprint_table1_is_not_a_permutation():
    ctx = make_context(3)
    printed = SparsePoly(ctx, {62: ONE, 33: ONE, 12: ONE})
    computed = SparsePoly(ctx, {61: ONE, 33: ONE, 12: ONE})
    assert not brute_force_is_permutation(ctx, printed)
    assert brute_force_is_permutation(ctx, computed)


def test_table6_n56_row_is_table5_row():
    t5 = {(c["n"], c["m"]): c["exponents"] for c in golden.load_golden(5)}
    t6 = {(c["n"], c["m"]): c["exponents"] for c in golden.load_golden(6)}
    assert all(t6[(56, m)] == t5[(56, m)] for m in (1, 2, 3))


def test_errata_reverify():
    errata = golden.load_errata()
    assert len(errata) == 4
    assert [golden.check_erratum(e) for e in errata] == [None] * 4


def test_only_errata_differ():
    for k in golden.TABLES:
        diffs = golden.diff_cells(golden.load_golden(k), [c.to_dict() for c in golden.generate_reference_table(k)])
        assert {d.key for d in diffs} == golden.errata_keys(k)


def test_erratum_detects_tampering(monkeypatch):
    entry = dict(golden.load_errata()[0], printed=[61, 33, 12])
    assert golden.check_erratum(entry) is not None


def test_diff_cells_names_cells():
    cells = golden.load_golden(2)
    bad = json.loads(json.dumps(cells))
    bad[0]["exponents"] = [18]
    bad[0]["poly"] = "x^18"
    diffs = golden.diff_cells(cells, bad)
    assert len(diffs) == 1
    assert str(diffs[0]) == "t=3 family=N n=1 m=1: expected x^17, got x^18"


def test_text_roundtrip():
    for k in golden.TABLES:
        cells = golden.load_golden(k)
        assert golden.parse_table_text(golden.render_table_text(cells)) == cells
