"""The definability status matrix, as published, with links to the checks.

Rows are quantifier prefixes, columns are ``source -> target`` directions.
Cell values:

``<formula name>``  a named defining formula (checked by a plan)
``impossible``      proved not definable with this prefix
``open``            open problem
``definable``       follows from a formula in a simpler row

Claims that have no finite certificate are listed as notes with status
``not-machine-checked``.
"""
from __future__ import annotations

import json

__all__ = ["COLUMNS", "matrix_rows", "matrix_notes", "matrix_json", "render_text", "cell", "PLAN_FOR_FORMULA"]

COLUMNS = ("tau->sig", "tau->lam", "sig->tau", "sig->lam", "lam->tau", "lam->sig")

_X = "impossible"
_O = "open"
_D = "definable"

_TABLE_2D = (
    ("E2 or A2", (_X, _X, _X, _X, _X, _X)),
    ("E3", ("EtsHat", _X, "EstHat", _X, _X, _X)),
    ("A3", (_X, "UtlHat", _X, "UslHat", _X, _X)),
    ("E4", ("Ets", _X, "Est", _X, _X, _X)),
    ("A4", (_X, "Utl", _X, "Usl", _X, _X)),
    ("E1A1", (_O, "PsiTL", _O, "PsiSL", _X, _X)),
    ("A1E1", ("PsiTS", _O, "PsiST", _O, _X, _X)),
    ("E2A1 or E1A2", (_O, _D, _O, _D, _X, _X)),
    ("A2E1 or A1E2", (_D, _O, _D, _O, _X, _X)),
    ("E2A2", ("WstMirror", _D, "Wst", _D, _X, _X)),
    ("A2E2", (_D, "WslMirror", _D, "Wsl", _X, _X)),
)

_TABLE_EUCL = (
    ("E2 or A2", (_X, _X, _X, _X, _X, _X)),
    ("E3", ("EtsHat", _X, _O, _X, _X, _X)),
    ("A3", (_X, "UtlHat", _X, _O, _X, _X)),
    ("E4", ("Ets", _X, _O, _X, _X, _X)),
    ("A4", (_X, "Utl", _X, _O, _X, _X)),
    ("E*", (_D, _X, _O, _X, _X, _X)),
    ("A*", (_X, _D, _X, _O, _X, _X)),
    ("E1A1", (_O, "PsiTL", _O, "PsiSL", _O, "PsiLS")),
    ("A1E1", ("PsiTS", _O, "PsiST", _O, "PsiLT", _O)),
    ("E2A1 or E1A2", (_O, _D, _O, _D, _O, _D)),
    ("A2E1 or A1E2", (_D, _O, _D, _O, _D, _O)),
    ("E2A2", (_O, _D, "Wst", _D, _O, _D)),
    ("A2E2", (_D, _O, _D, "Wsl", _D, _O)),
    ("E*A*", (_D, _D, _D, _D, _O, _D)),
    ("A*E*", (_D, _D, _D, _D, _D, _O)),
)

PLAN_FOR_FORMULA = {
    "PsiTS": "psi-ts",
    "PsiTL": "psi-tl",
    "PsiST": "psi-st",
    "PsiSL": "psi-sl",
    "PsiLS": "psi-ls",
    "PsiLT": "psi-lt",
    "Ets": "e-ts",
    "Utl": "u-tl",
    "Est": "e-st-2d",
    "Usl": "u-sl-2d",
    "EtsHat": "e-ts-hat",
    "UtlHat": "u-tl-hat",
    "EstHat": "e-st-hat-2d",
    "UslHat": "e-st-hat-2d",
    "Wsl": "w-sl",
    "Wst": "w-st",
    "WslMirror": "w-mirror-2d",
    "WstMirror": "w-mirror-2d",
}


def _table(n: int):
    if n < 2:
        raise ValueError("dimension must be at least 2")
    return _TABLE_2D if n == 2 else _TABLE_EUCL


def matrix_rows(n: int = 2) -> list[dict]:
    out = []
    for prefix, cells in _table(n):
        row = {"prefix": prefix, "cells": dict(zip(COLUMNS, cells))}
        plans = {c: PLAN_FOR_FORMULA[v] for c, v in row["cells"].items() if v in PLAN_FOR_FORMULA}
        if plans:
            row["plans"] = plans
        out.append(row)
    return out


_NOTES_EUCL = (
    {
        "formulas": ["WslMirror", "WstMirror"],
        "status": "not-machine-checked",
        "note": "for n>2 the tau-versions of Wsl and Wst define tau-bar minus = and the empty "
        "relation; this needs an unbounded forall-exists check",
    },
)


def matrix_notes(n: int = 2) -> list[dict]:
    return [] if n == 2 else [dict(d) for d in _NOTES_EUCL]


def cell(n: int, prefix: str, column: str) -> str:
    for row in matrix_rows(n):
        if row["prefix"] == prefix or prefix in row["prefix"].split(" or "):
            return row["cells"][column]
    raise KeyError(prefix)


def regime_text(n: int) -> str:
    return "n=2, any ordered field" if n == 2 else "n>2, Euclidean field"


def matrix_json(n: int = 2) -> str:
    data = {"regime": regime_text(n), "columns": list(COLUMNS), "rows": matrix_rows(n), "notes": matrix_notes(n)}
    return json.dumps(data, sort_keys=True)


_SHORT = {_X: "-", _O: "?", _D: "+"}


def render_text(n: int = 2) -> str:
    """Fixed-width table: ``-`` impossible, ``?`` open, ``+`` definable."""
    rows = matrix_rows(n)
    w0 = max(len(r["prefix"]) for r in rows)
    widths = [max(len(c), *(len(_SHORT.get(r["cells"][c], r["cells"][c])) for r in rows)) for c in COLUMNS]
    head = " " * w0 + " | " + " | ".join(c.ljust(w) for c, w in zip(COLUMNS, widths))
    lines = [f"definability status ({regime_text(n)})", head, "-" * len(head)]
    for r in rows:
        vals = [_SHORT.get(r["cells"][c], r["cells"][c]).ljust(w) for c, w in zip(COLUMNS, widths)]
        lines.append(r["prefix"].ljust(w0) + " | " + " | ".join(vals))
    lines.append("- impossible   ? open   + definable from a simpler row")
    for note in matrix_notes(n):
        lines.append(f"{', '.join(note['formulas'])}: {note['status']} ({note['note']})")
    return "\n".join(lines)
