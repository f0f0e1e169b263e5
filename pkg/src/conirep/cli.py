"""Command-line interface.

Commands:
    evaluate  analytical evaluation of a matrix file, JSON/CSV/text report
    numeric   midpoint-quadrature estimate at a chosen grid resolution
    compare   convergence table of the quadrature against the analytical value
    encode    bin a spike file into a matrix CSV
    sweep     evaluate every matrix file in a directory or glob

Exit codes: 0 success, 1 input error, 2 numerical fallback under --strict,
3 budget exceeded.
"""
from __future__ import annotations

import argparse
import glob
import json
import os
import sys
import warnings

import numpy as np

from .encode import SlotConfig, bin_spikes, read_spike_file
from .errors import BudgetExceededError, ConirepError, InputFormatError
from .evaluator import EvaluationResult, evaluate
from .linalg import TOL_GEOM
from .oracle import SAMPLE_BUDGET, convergence_study, ir_num

SCHEMA_VERSION = 1


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors, which this CLI reserves for strict
    mode; report flag misuse as an input error (exit 1) instead."""

    def error(self, message):
        raise InputFormatError(f"{self.prog}: {message}")


def read_matrix(path) -> np.ndarray:
    """Matrix CSV: one row per state, comma-separated, '#' lines ignored."""
    rows: list[list[float]] = []
    try:
        with open(path, encoding="utf-8") as fh:
            for lineno, raw in enumerate(fh, start=1):
                line = raw.strip()
                if not line or line.startswith("#"):
                    continue
                try:
                    rows.append([float(tok) for tok in line.split(",")])
                except ValueError as exc:
                    raise InputFormatError(f"{path}:{lineno}: {exc}") from exc
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    if not rows:
        raise InputFormatError(f"{path}: no matrix rows found")
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise InputFormatError(f"{path}: rows have inconsistent lengths")
    return np.array(rows)


def write_matrix(matrix: np.ndarray, stream) -> None:
    for row in matrix:
        stream.write(",".join(repr(float(v)) for v in row) + "\n")


def result_to_report(result: EvaluationResult) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "ir": result.ir,
        "irn": result.irn,
        "output_volume": result.output_volume,
        "method": result.method,
        "extreme_ray_columns": list(result.extreme_ray_columns),
        "redundant_columns": list(result.redundant_columns),
        "zero_columns": list(result.zero_columns),
        "regions": [
            {"element": list(r.element), "dim": r.dim, "volume": r.volume,
             "integral": r.integral}
            for r in result.regions
        ],
        "diagnostics": list(result.diagnostics),
    }


def _open_output(path):
    if path is None or path == "-":
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def _emit(lines_or_text, out_path):
    stream, close = _open_output(out_path)
    try:
        stream.write(lines_or_text)
    finally:
        if close:
            stream.close()


def _format_report(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "csv":
        cols = ["ir", "irn", "output_volume", "method",
                "extreme_ray_columns", "redundant_columns", "zero_columns"]
        head = ",".join(cols)
        row = ",".join(
            ";".join(str(v) for v in report[c]) if isinstance(report[c], list)
            else str(report[c])
            for c in cols
        )
        return f"{head}\n{row}\n"
    lines = [
        f"ir            {report['ir']!r}",
        f"irn           {report['irn']!r}",
        f"output volume {report['output_volume']!r}",
        f"method        {report['method']}",
        f"extreme ray columns: {report['extreme_ray_columns']}",
        f"redundant columns:   {report['redundant_columns']}",
        f"zero columns:        {report['zero_columns']}",
    ]
    if report["regions"]:
        lines.append("regions (element | dim | volume | integral):")
        for r in report["regions"]:
            lines.append(f"  {r['element']} | {r['dim']} | {r['volume']!r} | {r['integral']!r}")
    for d in report["diagnostics"]:
        lines.append(f"note: {d}")
    return "\n".join(lines) + "\n"


def _resolve_threads(args) -> int:
    if args.deterministic:
        return 1
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("CONIREP_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError as exc:
            raise InputFormatError(f"CONIREP_THREADS={env!r} is not an integer") from exc
    return 1


def _parse_ns(text: str):
    try:
        ns = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise InputFormatError(f"--n expects integers, got {text!r}") from exc
    if not ns or any(n < 1 for n in ns):
        raise InputFormatError("grid resolutions must be positive")
    return ns


def cmd_evaluate(args) -> int:
    matrix = read_matrix(args.input)
    result = evaluate(matrix, tol_geom=args.tol_geom, budget_samples=args.budget_samples,
                      threads=_resolve_threads(args))
    report = result_to_report(result)
    _emit(_format_report(report, args.format), args.output)
    if args.strict and result.method == "numerical-fallback":
        print("strict mode: numerical fallback was used", file=sys.stderr)
        return 2
    return 0


def cmd_numeric(args) -> int:
    matrix = read_matrix(args.input)
    ns = _parse_ns(args.n)
    if len(ns) != 1:
        raise InputFormatError("numeric expects a single --n value")
    q = ir_num(matrix, ns[0], budget=args.budget_samples, threads=_resolve_threads(args))
    report = {
        "schema_version": SCHEMA_VERSION,
        "ir_num": q.ir_num,
        "irn_num": q.irn_num,
        "n": q.n,
        "total_samples": q.total_samples,
        "elapsed_s": q.elapsed_s,
    }
    if args.format == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif args.format == "csv":
        text = "n,ir_num,irn_num,total_samples\n" \
               f"{q.n},{q.ir_num!r},{q.irn_num!r},{q.total_samples}\n"
    else:
        text = (f"ir_num  {q.ir_num!r}\nirn_num {q.irn_num!r}\n"
                f"n {q.n}  samples {q.total_samples}  elapsed {q.elapsed_s:.3f}s\n")
    _emit(text, args.output)
    return 0


def cmd_compare(args) -> int:
    matrix = read_matrix(args.input)
    result = evaluate(matrix, tol_geom=args.tol_geom, budget_samples=args.budget_samples,
                      threads=_resolve_threads(args))
    rows = convergence_study(matrix, _parse_ns(args.n), ir_exact=result.ir,
                             budget=args.budget_samples, threads=_resolve_threads(args))
    lines = ["n,ir_num,abs_error"]
    for n, value, err in rows:
        lines.append(f"{n},{value!r},{err!r}")
    if args.format == "json":
        text = json.dumps({
            "schema_version": SCHEMA_VERSION,
            "ir": result.ir,
            "rows": [{"n": n, "ir_num": v, "abs_error": e} for n, v, e in rows],
        }, indent=2) + "\n"
    else:
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if args.strict and result.method == "numerical-fallback":
        return 2
    return 0


def cmd_encode(args) -> int:
    train = read_spike_file(args.input)
    cfg = SlotConfig(slot_length=args.slot_length, state_count=args.slots)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        matrix = bin_spikes(train, cfg)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    stream, close = _open_output(args.output)
    try:
        stream.write(f"# encoded from {os.path.basename(args.input)}: "
                     f"{cfg.state_count} slots of {cfg.slot_length}s\n")
        write_matrix(matrix.entries, stream)
    finally:
        if close:
            stream.close()
    return 0


def cmd_sweep(args) -> int:
    if os.path.isdir(args.input):
        paths = sorted(glob.glob(os.path.join(args.input, "*.csv")))
    else:
        paths = sorted(glob.glob(args.input))
    if not paths:
        raise InputFormatError(f"no matrix files match {args.input!r}")
    threads = _resolve_threads(args)
    rows = []
    fallback_used = False
    for path in paths:
        result = evaluate(read_matrix(path), tol_geom=args.tol_geom,
                          budget_samples=args.budget_samples, threads=threads)
        fallback_used |= result.method == "numerical-fallback"
        rows.append((path, result))
    if args.format == "json":
        text = json.dumps({
            "schema_version": SCHEMA_VERSION,
            "results": [{"file": p, **result_to_report(r)} for p, r in rows],
        }, indent=2) + "\n"
    else:
        lines = ["file,ir,irn,output_volume,method"]
        for p, r in rows:
            lines.append(f"{p},{r.ir!r},{r.irn!r},{r.output_volume!r},{r.method}")
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    if args.strict and fallback_used:
        return 2
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="conirep",
        description="Evaluate how well a nonnegative activity matrix supports "
                    "a nonnegative-weighted readout.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="input file (matrix CSV or spike file)")
    common.add_argument("--output", default=None, help="output file; stdout when omitted")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--n", default="32",
                        help="grid resolution; comma-separated list for compare")
    common.add_argument("--threads", type=int, default=None,
                        help="worker threads for quadrature (env CONIREP_THREADS)")
    common.add_argument("--deterministic", action="store_true",
                        help="force single-threaded, byte-stable output")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 when a numerical fallback is used")
    common.add_argument("--budget-samples", type=int, default=SAMPLE_BUDGET,
                        help="max total quadrature samples")
    common.add_argument("--tol-geom", type=float, default=TOL_GEOM,
                        help="geometric comparison tolerance")

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("evaluate", parents=[common],
                   help="analytical evaluation of a matrix file").set_defaults(func=cmd_evaluate)
    sub.add_parser("numeric", parents=[common],
                   help="midpoint quadrature estimate").set_defaults(func=cmd_numeric)
    p_compare = sub.add_parser("compare", parents=[common],
                               help="quadrature convergence against the analytical value")
    p_compare.add_argument("--plot-data", action="store_true",
                           help="emit the same CSV rows (for external plotting)")
    p_compare.set_defaults(func=cmd_compare, n="8,16,32,64")
    p_encode = sub.add_parser("encode", parents=[common],
                              help="bin a spike file into a matrix CSV")
    p_encode.add_argument("--slot-length", type=float, required=True,
                          help="slot duration in seconds")
    p_encode.add_argument("--slots", type=int, required=True,
                          help="number of time slots (matrix rows)")
    p_encode.set_defaults(func=cmd_encode)
    sub.add_parser("sweep", parents=[common],
                   help="evaluate every matrix file in a directory or glob"
                   ).set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (InputFormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except BudgetExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except ConirepError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
