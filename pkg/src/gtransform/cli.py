"""Command-line front end.

Subcommands: table (run an engine on a sequence file), integrate (the
semi-infinite integral driver), bench (operation counts), check (the
exact consistency suite).  Machine output is JSON on stdout; diagnostics
go to stderr only.  Exit codes: 0 success, 2 input/parse error, 3 when
every entry beyond column 0 broke down, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .crosscheck import run_equivalence_suite
from .engines import run_epsilon, run_fs_qd, run_rs, shanks_prepare
from .opbench import METHODS, MIN_L, bench_method
from .quadrature import ENGINES, QuadratureConfig, g_transform, make_spec
from .scalars import FloatField, ParseError, RationalField, rational_from_text
from .tables import (
    ArgumentError,
    ExtrapolationTable,
    InitializationError,
    SequencePair,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ALL_BREAKDOWN = 3
EXIT_USAGE = 64


class _UsageError(Exception):
    def __init__(self, message: str):
        super().__init__(message)


class _Parser(argparse.ArgumentParser):
    """argparse with usage failures mapped to exit code 64."""

    def error(self, message):
        raise _UsageError(message)


class _InputError(Exception):
    pass


def _load_document(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise _InputError(f"{path} is not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise _InputError(f"{path}: top level must be an object")
    return doc


def _parse_values(raw, field_name: str, exact: bool) -> list:
    if not isinstance(raw, list) or not raw:
        raise _InputError(f"field {field_name!r} must be a non-empty list")
    out = []
    for i, v in enumerate(raw):
        try:
            if isinstance(v, str):
                val = rational_from_text(v)
            elif isinstance(v, bool):
                raise ParseError("booleans are not numbers")
            elif isinstance(v, int):
                val = Fraction(v)
            elif isinstance(v, float):
                # Read decimal literals at face value so 0.1 means 1/10
                # in exact mode.
                val = Fraction(repr(v))
            else:
                raise ParseError(f"unsupported type {type(v).__name__}")
        except ParseError as exc:
            raise _InputError(f"{field_name}[{i}]: {exc}") from None
        out.append(val if exact else float(val))
    return out


def _serialize_value(v, exact: bool):
    if v is None:
        return None
    if exact:
        return str(v)
    return float(v)


def _table_document(table: ExtrapolationTable, exact: bool) -> Dict[str, Any]:
    rows = []
    for (j, n), entry in table.items():
        rows.append(
            {
                "j": j,
                "n": n,
                "value": _serialize_value(entry.value, exact)
                if entry.valid
                else None,
                "status": entry.status.label,
            }
        )
    diagonal = [
        _serialize_value(e.value, exact) if e.valid else None
        for e in table.diagonal()
    ]
    return {
        "method": table.method,
        "L": table.limit,
        "table": rows,
        "diagonal": diagonal,
    }


def _emit(doc: Dict[str, Any], args) -> None:
    if getattr(args, "format", "json") == "text":
        text = _render_text(doc, full=getattr(args, "full", False))
        payload = text
    else:
        payload = json.dumps(doc, indent=2) + "\n"
    out_path = getattr(args, "output", None)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _render_text(doc: Dict[str, Any], full: bool) -> str:
    lines = [f"method {doc['method']}  L={doc['L']}"]
    if "x" in doc:
        lines.append(f"x={doc['x']}  h={doc['h']}")
    lines.append("diagonal:")
    errors = doc.get("errors")
    for n, v in enumerate(doc.get("diagonal", [])):
        row = f"  n={n:<3} {v if v is not None else '(unavailable)'}"
        if errors is not None and n < len(errors) and errors[n] is not None:
            row += f"   error {errors[n]:.3e}"
        lines.append(row)
    if doc.get("reference") is not None:
        lines.append(f"reference: {doc['reference']}")
    deltas = doc.get("diagonal_deltas")
    if deltas:
        shown = ", ".join(
            "-" if d is None else f"{d:.3e}" for d in deltas
        )
        lines.append(f"diagonal deltas: {shown}")
    if full and "table" in doc:
        lines.append("table:")
        for row in doc["table"]:
            lines.append(
                f"  ({row['j']},{row['n']}) {row['status']}"
                + (f" {row['value']}" if row["value"] is not None else "")
            )
    return "\n".join(lines) + "\n"


def cmd_table(args) -> int:
    doc = _load_document(args.input)
    exact = args.exact
    A = _parse_values(doc.get("A"), "A", exact)
    mode = doc.get("mode")
    has_u = "u" in doc and doc["u"] is not None
    if mode is None:
        mode = "general" if has_u else "shanks"
    if mode not in ("general", "shanks"):
        raise _InputError(f"mode must be 'general' or 'shanks', got {mode!r}")
    if mode == "shanks" and has_u:
        raise _InputError("field 'u' must be absent in shanks mode")

    fld = RationalField() if exact else FloatField()
    if args.method == "eps":
        table = run_epsilon(A, field=fld)
    else:
        if mode == "shanks":
            seq = shanks_prepare(A, field=fld)
        else:
            u = _parse_values(doc.get("u"), "u", exact)
            seq = SequencePair(A=A, u=u)
        if args.method == "fsqd":
            table = run_fs_qd(seq, diagonal_only=args.diagonal_only, field=fld)
        else:
            _, table = run_rs(seq, field=fld)

    out = _table_document(table, exact)
    _emit(out, args)
    if table.all_beyond_first_column_broken():
        return EXIT_ALL_BREAKDOWN
    return EXIT_OK


def cmd_integrate(args) -> int:
    spec = make_spec(args.integrand, a=args.a)
    cfg = QuadratureConfig(
        subdivisions_per_panel=args.subdivisions,
        analytic_F=args.analytic_f,
    )
    result = g_transform(
        spec, x=args.x, h=args.h, n_max=args.n_max, engine=args.engine, cfg=cfg
    )
    doc = _table_document(result.table, exact=False)
    doc["x"] = result.x
    doc["h"] = result.h
    doc["reference"] = result.reference
    if result.errors is not None:
        diag_errors: List[Optional[float]] = []
        for n in range(result.table.limit + 1):
            diag_errors.append(result.errors.get((0, n)))
        doc["errors"] = diag_errors
    else:
        doc["errors"] = None
        doc["diagonal_deltas"] = result.diagonal_deltas
    _emit(doc, args)
    if result.table.all_beyond_first_column_broken():
        return EXIT_ALL_BREAKDOWN
    return EXIT_OK


def cmd_bench(args) -> int:
    try:
        report = bench_method(args.method, args.L, args.seed)
    except ArgumentError as exc:
        raise _UsageError(str(exc)) from None
    doc = report.as_dict()
    doc["seed"] = args.seed
    _emit(doc, args)
    return EXIT_OK


def cmd_check(args) -> int:
    if args.L > 5:
        raise _UsageError(f"check is capped at L <= 5, got {args.L}")
    if args.L < 1:
        raise _UsageError(f"L must be >= 1, got {args.L}")
    report = run_equivalence_suite(L=args.L, cases=args.cases, seed=args.seed)
    doc = {
        "cases": report.cases,
        "passed": report.ok,
        "first_counterexample": report.first_counterexample(),
    }
    _emit(doc, args)
    if not report.ok:
        sys.stderr.write(
            f"counterexample: {report.first_counterexample()}\n"
        )
        return 1
    return EXIT_OK


def _build_parser() -> _Parser:
    parser = _Parser(prog="gtransform", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="run an engine on a sequence file")
    p_table.add_argument("--input", required=True, help="InputDocument JSON path")
    p_table.add_argument("--method", required=True, choices=("fsqd", "rs", "eps"))
    p_table.add_argument("--exact", action="store_true",
                         help="exact rational arithmetic")
    p_table.add_argument("--diagonal-only", action="store_true",
                         help="restrict final divisions to the diagonal")
    p_table.add_argument("--output", help="write JSON here instead of stdout")
    p_table.add_argument("--format", choices=("json", "text"), default="json")
    p_table.add_argument("--full", action="store_true",
                         help="text format: include the full table")
    p_table.set_defaults(fn=cmd_table)

    p_int = sub.add_parser("integrate", help="accelerate a semi-infinite integral")
    p_int.add_argument("--integrand", required=True,
                       choices=("exp_decay", "t_exp", "sinc"))
    p_int.add_argument("--a", type=float, default=0.0, help="lower limit")
    p_int.add_argument("--x", type=float, required=True, help="first sample point")
    p_int.add_argument("--h", type=float, default=1.0, help="sample spacing")
    p_int.add_argument("--n-max", type=int, required=True, dest="n_max")
    p_int.add_argument("--engine", choices=ENGINES, default="fsqd")
    p_int.add_argument("--subdivisions", type=int, default=64,
                       help="Simpson subdivisions per panel")
    p_int.add_argument("--analytic-f", action="store_true", dest="analytic_f",
                       help="use the closed-form running integral when known")
    p_int.add_argument("--output", help="write JSON here instead of stdout")
    p_int.add_argument("--format", choices=("json", "text"), default="json")
    p_int.add_argument("--full", action="store_true")
    p_int.set_defaults(fn=cmd_integrate)

    p_bench = sub.add_parser("bench", help="operation-count benchmark")
    p_bench.add_argument("--method", required=True, choices=METHODS)
    p_bench.add_argument("--L", type=int, required=True,
                         help=f"table size, at least {MIN_L}")
    p_bench.add_argument("--seed", type=int, default=1)
    p_bench.add_argument("--output", help="write JSON here instead of stdout")
    p_bench.add_argument("--format", choices=("json", "text"), default="json")
    p_bench.set_defaults(fn=cmd_bench)

    p_check = sub.add_parser("check", help="exact consistency suite")
    p_check.add_argument("--L", type=int, default=4)
    p_check.add_argument("--cases", type=int, default=20)
    p_check.add_argument("--seed", type=int, default=7)
    p_check.add_argument("--output", help="write JSON here instead of stdout")
    p_check.add_argument("--format", choices=("json", "text"), default="json")
    p_check.set_defaults(fn=cmd_check)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write(f"gtransform: usage error: {exc}\n")
        return EXIT_USAGE
    try:
        return args.fn(args)
    except _UsageError as exc:
        sys.stderr.write(f"gtransform: usage error: {exc}\n")
        return EXIT_USAGE
    except (_InputError, InitializationError, ParseError) as exc:
        sys.stderr.write(f"gtransform: input error: {exc}\n")
        return EXIT_INPUT
    except ArgumentError as exc:
        sys.stderr.write(f"gtransform: usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
