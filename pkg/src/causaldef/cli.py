"""Command-line front end.

    python3 -m causaldef relate -n 3 "(-2,-2,0)" "(2,2,0)"
    python3 -m causaldef verify psi-ts --n 2 --trials 200 --seed 0
    python3 -m causaldef matrix --n 3
    python3 -m causaldef formula PsiTS --classify

Exit codes: 0 pass, 1 fail, 2 regime violation, 3 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .exactfield import FieldError, parse_field
from .formulas import UnknownName, builtin, to_text
from .minkowski import Point, mink_form, relate
from .plans import PLANS, overall, run_plan
from .status import matrix_notes, matrix_rows, render_text
from .witnesses import RegimeViolation, Status

__all__ = ["main", "build_parser", "EXIT_PASS", "EXIT_FAIL", "EXIT_REGIME", "EXIT_USAGE"]

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_REGIME = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _add_common(p, trials=False):
    p.add_argument("-n", "--n", type=int, default=None, help="dimension")
    p.add_argument("-f", "--field", default=None, help="Q or Q(rtD)")
    if trials:
        p.add_argument("--trials", type=int, default=200)
        p.add_argument("--seed", default="0")
        p.add_argument("--out", default=None)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="causaldef", description="Definability checks for causal relations in Minkowski spacetime.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("relate", help="relation between two points")
    _add_common(p)
    p.add_argument("p")
    p.add_argument("q")

    p = sub.add_parser("verify", help="run a registered check plan")
    p.add_argument("theorem", choices=list(PLANS))
    _add_common(p, trials=True)

    p = sub.add_parser("matrix", help="definability status matrix")
    _add_common(p)

    p = sub.add_parser("formula", help="print or classify a built-in formula")
    p.add_argument("name")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--print", dest="mode", action="store_const", const="print")
    g.add_argument("--classify", dest="mode", action="store_const", const="classify")
    return parser


def _seed(text: str):
    try:
        return int(text)
    except ValueError:
        return text


def _report(command: str, n, field: str, seed, trials, verdicts, matrix) -> dict:
    return {
        "version": __version__,
        "command": command,
        "n": n,
        "field": field,
        "seed": seed,
        "trials": trials,
        "verdicts": [v.to_json() for v in verdicts],
        "matrix": matrix,
    }


def _dump(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def cmd_relate(args, out) -> int:
    ctx = parse_field(args.field or "Q")
    p, q = Point.parse(args.p, ctx), Point.parse(args.q, ctx)
    if args.n is not None and (p.n != args.n or q.n != args.n):
        raise UsageError(f"points must have {args.n} coordinates")
    out.write(f"{relate(p, q)} {mink_form(p, q)}\n")
    return EXIT_PASS


def _verdict_lines(verdicts) -> list[str]:
    lines = []
    for v in verdicts:
        lines.append(f"{v.plan}: {v.status.value} (n={v.n}, field={v.field}, trials={v.trials}, seed={v.seed})")
        for k, c in v.counts.items():
            lines.append(f"  {k}: {json.dumps(c, sort_keys=True, default=str)}")
        for note in v.notes:
            lines.append(f"  note: {note}")
        if v.counterexample:
            lines.append("  counterexample: " + ", ".join(f"{k}={x}" for k, x in v.counterexample.items()))
    return lines


def cmd_verify(args, out) -> int:
    plan = PLANS[args.theorem]
    n = plan.default_n if args.n is None else args.n
    ctx = parse_field(args.field or plan.default_field)
    seed = _seed(args.seed)
    if args.trials < 1:
        raise UsageError("--trials must be positive")
    command = f"verify {args.theorem}"
    try:
        verdicts = run_plan(args.theorem, n, ctx, args.trials, seed)
    except RegimeViolation as e:
        sys.stderr.write(f"regime violation: {e}\n")
        return EXIT_REGIME
    report = _report(command, n, str(ctx), seed, args.trials, verdicts, [])
    status = overall(verdicts)
    if args.fmt == "text":
        text = "\n".join(_verdict_lines(verdicts) + [f"overall: {status.value}"]) + "\n"
    else:
        text = _dump(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return EXIT_PASS if status is Status.PASS else EXIT_FAIL


def cmd_matrix(args, out) -> int:
    n = 2 if args.n is None else args.n
    field = args.field or "Q"
    parse_field(field)
    if args.fmt == "json":
        report = _report("matrix", n, field, None, None, [], matrix_rows(n))
        report["notes"] = matrix_notes(n)
        out.write(_dump(report))
    else:
        out.write(render_text(n) + "\n")
    return EXIT_PASS


def cmd_formula(args, out) -> int:
    nf = builtin(args.name)
    if args.mode == "classify":
        out.write(f"vars={nf.vars} prefix={nf.prefix.name}\n")
    else:
        out.write(to_text(nf.formula) + "\n")
    return EXIT_PASS


_COMMANDS = {"relate": cmd_relate, "verify": cmd_verify, "matrix": cmd_matrix, "formula": cmd_formula}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a command is required: " + ", ".join(_COMMANDS))
        return _COMMANDS[args.command](args, out)
    except (UsageError, UnknownName, FieldError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
