import json

import pytest

from causaldef.status import COLUMNS, cell, matrix_json, matrix_notes, matrix_rows, render_text

X, O, D = "impossible", "open", "definable"

# transcription of the published tables, one row per prefix
PLANAR = {
    "E2": (X, X, X, X, X, X),
    "A2": (X, X, X, X, X, X),
    "E3": ("EtsHat", X, "EstHat", X, X, X),
    "A3": (X, "UtlHat", X, "UslHat", X, X),
    "E4": ("Ets", X, "Est", X, X, X),
    "A4": (X, "Utl", X, "Usl", X, X),
    "E1A1": (O, "PsiTL", O, "PsiSL", X, X),
    "A1E1": ("PsiTS", O, "PsiST", O, X, X),
    "E2A1": (O, D, O, D, X, X),
    "E1A2": (O, D, O, D, X, X),
    "A2E1": (D, O, D, O, X, X),
    "A1E2": (D, O, D, O, X, X),
    "E2A2": ("WstMirror", D, "Wst", D, X, X),
    "A2E2": (D, "WslMirror", D, "Wsl", X, X),
}
EUCLIDEAN = {
    "E2": (X, X, X, X, X, X),
    "A2": (X, X, X, X, X, X),
    "E3": ("EtsHat", X, O, X, X, X),
    "A3": (X, "UtlHat", X, O, X, X),
    "E4": ("Ets", X, O, X, X, X),
    "A4": (X, "Utl", X, O, X, X),
    "E*": (D, X, O, X, X, X),
    "A*": (X, D, X, O, X, X),
    "E1A1": (O, "PsiTL", O, "PsiSL", O, "PsiLS"),
    "A1E1": ("PsiTS", O, "PsiST", O, "PsiLT", O),
    "E2A1": (O, D, O, D, O, D),
    "E1A2": (O, D, O, D, O, D),
    "A2E1": (D, O, D, O, D, O),
    "A1E2": (D, O, D, O, D, O),
    "E2A2": (O, D, "Wst", D, O, D),
    "A2E2": (D, O, D, "Wsl", D, O),
    "E*A*": (D, D, D, D, O, D),
    "A*E*": (D, D, D, D, D, O),
}


@pytest.mark.parametrize("n, table", [(2, PLANAR), (3, EUCLIDEAN), (5, EUCLIDEAN)])
def test_cell_for_cell(n, table):
    for prefix, cells in table.items():
        assert tuple(cell(n, prefix, c) for c in COLUMNS) == cells, prefix


def test_row_counts():
    assert len(matrix_rows(2)) == 11 and len(matrix_rows(3)) == 15


def test_plan_links():
    row = next(r for r in matrix_rows(2) if r["prefix"] == "A1E1")
    assert row["plans"] == {"tau->sig": "psi-ts", "sig->tau": "psi-st"}


def test_notes():
    assert matrix_notes(2) == []
    (note,) = matrix_notes(3)
    assert note["status"] == "not-machine-checked"
    assert set(note["formulas"]) == {"WslMirror", "WstMirror"}


def test_json_and_text():
    data = json.loads(matrix_json(3))
    assert data["columns"] == list(COLUMNS)
    text = render_text(2)
    assert "PsiTS" in text and "?" in text
    assert render_text(2) == render_text(2)
    with pytest.raises(ValueError):
        matrix_rows(1)
