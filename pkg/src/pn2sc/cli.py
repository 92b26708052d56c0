"""Command-line frontend: transform, validate, generate, bench.

Exit codes: 0 success, 1 failed validation, 2 irreducible input net,
64 usage errors, 65 unreadable or malformed input.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
import time
from pathlib import Path

from . import io as scio
from .generate import GenSpec, generate_sp_net
from .init import initialize_statechart
from .reduce import assign_hyperedges, create_statechart, create_top, fixpoint
from .validate import validate_counts, validate_full

EX_OK = 0
EX_VALIDATION_FAILED = 1
EX_IRREDUCIBLE = 2
EX_USAGE = 64
EX_DATAERR = 65


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="pn2sc", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_tr = sub.add_parser("transform", help="reduce a Petri net file to a "
                          "statechart file")
    p_tr.add_argument("input", help="Petri net JSON file")
    p_tr.add_argument("-o", "--output", required=True,
                      help="statechart JSON file to write")

    p_val = sub.add_parser("validate", help="compare a produced statechart "
                           "against an expected one")
    p_val.add_argument("actual")
    p_val.add_argument("expected")
    p_val.add_argument("--counts-only", action="store_true",
                       help="compare per-kind element counts only")

    p_gen = sub.add_parser("generate", help="write a synthetic benchmark net")
    p_gen.add_argument("--places", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--branch-factor-max", type=int, default=4)
    p_gen.add_argument("--parallel-prob", type=float, default=0.5)
    p_gen.add_argument("-o", "--output",
                       help="output file (default: sp<places>_<seed>.json)")

    p_bench = sub.add_parser("bench", help="time the transformation across "
                             "net sizes")
    p_bench.add_argument("--sizes", default="5000,10000,40000",
                         help="comma separated place counts")
    p_bench.add_argument("--reps", type=int, default=3)
    p_bench.add_argument("--seed", type=int, default=0)
    return parser


def _read_file(path: str) -> bytes:
    try:
        return Path(path).read_bytes()
    except OSError as exc:
        raise scio.DocumentError(f"cannot read {path}: {exc}") from None


def _cmd_transform(args: argparse.Namespace) -> int:
    pn = scio.read_petri_net(_read_file(args.input))
    sc, result = create_statechart(pn)
    if not result.ok:
        print(
            f"irreducible: {result.top_or_count} top-level OR states; "
            f"{result.remaining_places} places and "
            f"{result.remaining_transitions} transitions remain",
            file=sys.stderr,
        )
        return EX_IRREDUCIBLE
    Path(args.output).write_bytes(scio.write_statechart(sc, result))
    return EX_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    actual = scio.read_statechart(_read_file(args.actual))
    expected = scio.read_statechart(_read_file(args.expected))
    check = validate_counts if args.counts_only else validate_full
    report = check(actual, expected)
    for item in report.discrepancies:
        print(f"{item.kind}: {item.detail}")
    print(f"{report.level.value} validation "
          f"{'passed' if report.passed else 'failed'}")
    return EX_OK if report.passed else EX_VALIDATION_FAILED


def _cmd_generate(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(args.places, args.seed, args.branch_factor_max,
                       args.parallel_prob)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    out = args.output or spec.file_name()
    Path(out).write_bytes(scio.petri_net_to_bytes(generate_sp_net(spec)))
    return EX_OK


def run_bench(sizes: list[int], reps: int, seed: int) -> list[dict]:
    """Time init and reduction phases; returns one row per size with the
    median over ``reps`` runs, in milliseconds."""
    rows = []
    for size in sizes:
        doc = generate_sp_net(GenSpec(size, seed))
        init_ms, reduce_ms, total_ms = [], [], []
        for _ in range(reps):
            pn = scio.store_from_petri_net(doc)
            t0 = time.perf_counter()
            sc, trace = initialize_statechart(pn)
            t1 = time.perf_counter()
            fixpoint(pn, sc, trace)
            result = create_top(pn, sc)
            if result.ok:
                assign_hyperedges(sc)
            t2 = time.perf_counter()
            init_ms.append((t1 - t0) * 1000.0)
            reduce_ms.append((t2 - t1) * 1000.0)
            total_ms.append((t2 - t0) * 1000.0)
        rows.append({
            "size": size,
            "seed": seed,
            "init_ms": statistics.median(init_ms),
            "reduce_ms": statistics.median(reduce_ms),
            "total_ms": statistics.median(total_ms),
        })
    return rows


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        sizes = [int(part) for part in args.sizes.split(",") if part]
    except ValueError:
        raise _UsageError(f"bad --sizes value: {args.sizes!r}") from None
    if not sizes or args.reps < 1:
        raise _UsageError("need at least one size and one repetition")
    rows = run_bench(sizes, args.reps, args.seed)
    header = f"{'size':>8}  {'init_ms':>10}  {'reduce_ms':>10}  {'total_ms':>10}"
    print(header, file=sys.stderr)
    for row in rows:
        print(
            f"{row['size']:>8}  {row['init_ms']:>10.1f}  "
            f"{row['reduce_ms']:>10.1f}  {row['total_ms']:>10.1f}",
            file=sys.stderr,
        )
    print(json.dumps(rows, indent=2))
    return EX_OK


_COMMANDS = {
    "transform": _cmd_transform,
    "validate": _cmd_validate,
    "generate": _cmd_generate,
    "bench": _cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return EX_USAGE
    except SystemExit as exc:  # argparse --help and friends
        code = exc.code
        return code if isinstance(code, int) else EX_USAGE
    except scio.DocumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EX_DATAERR


if __name__ == "__main__":
    sys.exit(main())
