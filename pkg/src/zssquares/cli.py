"""Command-line interface.

    zssquares enumerate --rows 4 --cols 5 --max-abs-disc 8 --count-only
    zssquares verify all
    zssquares classify matrix.txt

Exit codes: 0 success, 1 a verification failed, 2 usage or parse error.
Standard output is deterministic for a given command line, whatever
``--jobs`` is; timings go to standard error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence, TextIO

from .matrix import BinaryMatrix, MatrixFormatError, discrepancy, find_zero_sum_square, parse_matrices, render_matrix
from .search import DEFAULT_PREFIX_CELLS, Emit, EnumerationQuery, enumerate_matrices
from .split import classify_split
from .symmetry import dedup
from .verify import CHECKS, DEFAULT_BUDGET, FULL_BUDGET, SKIPPED, run_check

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def matrix_record(m: BinaryMatrix) -> dict:
    split = classify_split(m)
    return {
        "rows": m.rows,
        "cols": m.cols,
        "disc": discrepancy(m),
        "split": split.to_json() if split else None,
        "entries": m.row_strings(),
    }


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _non_negative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zssquares", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="list square-free matrices of one shape")
    p.add_argument("--rows", type=_positive, required=True)
    p.add_argument("--cols", type=_positive, required=True)
    disc = p.add_mutually_exclusive_group()
    disc.add_argument("--disc", type=int, help="exact discrepancy")
    disc.add_argument("--max-abs-disc", type=_non_negative, help="bound on |disc|")
    p.add_argument("--no-zssf", action="store_true", help="do not require square-freeness")
    p.add_argument("--count-only", action="store_true", help="print only the summary report")
    p.add_argument("--canonical", action="store_true", help="one representative per symmetry class")
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--jobs", type=_non_negative, default=0, help="worker processes (0: all cores)")
    p.add_argument("--prefix-cells", type=_positive, default=DEFAULT_PREFIX_CELLS)

    p = sub.add_parser("verify", help="run verification checks")
    p.add_argument("check", help=f"one of {', '.join(CHECKS)}, or 'all'")
    p.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET, help="largest n for exhaustive shapes")
    p.add_argument("--full", action="store_true", help=f"same as --budget {FULL_BUDGET} (minutes)")
    p.add_argument("--n", type=_positive, help="single side length for theorem5")
    p.add_argument("--n-max", type=int, default=10**6, help="sweep limit for parabola")
    p.add_argument("--format", choices=("text", "jsonl"), default="text")
    p.add_argument("--jobs", type=_non_negative, default=0)

    p = sub.add_parser("classify", help="classify matrices read from a file")
    p.add_argument("path", help="matrix file, or '-' for standard input")
    return parser


def _print_report(report, extra: dict, fmt: str, out: TextIO) -> None:
    data = report.to_json(timing=False)
    data.update(extra)
    if fmt == "jsonl":
        out.write(_dumps(data) + "\n")
        return
    for key, value in data.items():
        if key == "per_disc":
            value = " ".join(f"{d}:{c}" for d, c in value.items()) or "-"
        out.write(f"{key}: {value}\n")


def cmd_enumerate(args, out: TextIO, err: TextIO) -> int:
    query = EnumerationQuery(
        rows=args.rows,
        cols=args.cols,
        disc=args.disc,
        max_abs_disc=args.max_abs_disc,
        require_zssf=not args.no_zssf,
        emit=Emit.COUNT if args.count_only and not args.canonical else Emit.MATRICES,
    )
    first = True

    def write(m: BinaryMatrix) -> None:
        nonlocal first
        if args.format == "jsonl":
            out.write(_dumps(matrix_record(m)) + "\n")
        else:
            out.write(("" if first else "\n") + render_matrix(m))
        first = False

    collected: list[BinaryMatrix] = []
    if args.canonical:
        sink = collected.append
    else:
        sink = None if args.count_only else write
    report = enumerate_matrices(query, sink, jobs=args.jobs, prefix_cells=args.prefix_cells)

    extra = {}
    if args.canonical:
        classes = dedup(collected)
        n_split = sum(1 for m in classes if classify_split(m) is not None)
        extra = {
            "canonical_classes": len(classes),
            "canonical_split": n_split,
            "canonical_exceptional": len(classes) - n_split,
        }
        if not args.count_only:
            for m in classes:
                write(m)
    if args.count_only:
        _print_report(report, extra, args.format, out)
    err.write(f"elapsed {report.elapsed:.3f}s\n")
    return EXIT_OK


def cmd_verify(args, parser: argparse.ArgumentParser, out: TextIO, err: TextIO) -> int:
    names = list(CHECKS) if args.check == "all" else [args.check]
    if args.check != "all" and args.check not in CHECKS:
        parser.error(f"unknown check {args.check!r}; choose from {', '.join(CHECKS)}, all")
    if args.n is not None and args.n < 5:
        parser.error("--n must be at least 5")
    if args.n_max < 16:
        parser.error("--n-max must be at least 16")
    budget = FULL_BUDGET if args.full else args.budget
    outcomes = []
    for name in names:
        outcomes.extend(run_check(name, budget=budget, jobs=args.jobs, n=args.n, n_max=args.n_max))
    for o in outcomes:
        if args.format == "jsonl":
            out.write(_dumps(o.to_json(timing=False)) + "\n")
        else:
            line = f"{o.status.upper():7} {o.name}"
            if o.name == "theorem5":
                line += f" n={o.details['n']}"
            skipped = o.details.get("skipped")
            if isinstance(skipped, list) and skipped:
                line += f" ({SKIPPED}: {', '.join(skipped)})"
            out.write(line + "\n")
        err.write(f"{o.name}: {o.duration:.3f}s\n")
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL


def describe(m: BinaryMatrix) -> str:
    parts = [f"disc {discrepancy(m)}"]
    q = find_zero_sum_square(m)
    parts.append("zssf" if q is None else f"zero-sum square at (i={q.i}, j={q.j}, s={q.s})")
    split = classify_split(m)
    parts.append(str(split) if split else "non-split")
    return ", ".join(parts)


def cmd_classify(args, out: TextIO, err: TextIO) -> int:
    try:
        if args.path == "-":
            text = sys.stdin.read()
        else:
            with open(args.path, encoding="ascii", newline="") as fh:
                text = fh.read()
    except (OSError, UnicodeDecodeError) as exc:
        err.write(f"{args.path}: {exc}\n")
        return EXIT_USAGE
    try:
        matrices = parse_matrices(text)
    except MatrixFormatError as exc:
        err.write(f"{args.path}:{exc.line}:{exc.column}: {exc}\n")
        return EXIT_USAGE
    if not matrices:
        err.write(f"{args.path}: no matrix found\n")
        return EXIT_USAGE
    for m in matrices:
        out.write(describe(m) + "\n")
    return EXIT_OK


def main(argv: Optional[Sequence[str]] = None, out: TextIO = None, err: TextIO = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, out, err)
        if args.command == "verify":
            return cmd_verify(args, parser, out, err)
        return cmd_classify(args, out, err)
    except SystemExit as exc:
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
