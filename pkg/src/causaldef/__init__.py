"""Exact checks of first-order definability among the causal relations of
Minkowski spacetime over ordered fields."""

__version__ = "0.1.0"

from .exactfield import QQ, FieldCtx, FieldElem, NotASquare, parse_field, quad_field
from .formulas import builtin, builtin_names, classify_prefix, eval_qf, parse, to_text
from .minkowski import EQ, LAM, NE, SIG, TAU, Point, RelKind, RelSet, mink_form, relate
from .plans import plan_ids, run_plan
from .witnesses import Status, Verdict, check_formula

__all__ = [
    "__version__",
    "QQ",
    "FieldCtx",
    "FieldElem",
    "NotASquare",
    "parse_field",
    "quad_field",
    "Point",
    "RelKind",
    "RelSet",
    "TAU",
    "LAM",
    "SIG",
    "EQ",
    "NE",
    "mink_form",
    "relate",
    "parse",
    "to_text",
    "eval_qf",
    "builtin",
    "builtin_names",
    "classify_prefix",
    "check_formula",
    "Status",
    "Verdict",
    "plan_ids",
    "run_plan",
]
