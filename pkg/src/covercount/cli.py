"""Command-line front end.

Every command prints a single JSON document (or CSV for ``census --csv``).
Exit codes: 0 success, 1 verification failure or count mismatch, 2 usage
error, 3 budget refusal.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Sequence

from . import acceptance
from .closed_form import g_alpha, g_value, h_alpha, h_value
from .identities import G_FAMILY, H_FAMILY, IDENTITIES, SERIES_TAGS, build_series, verify
from .oracle import (
    DEFAULT_BUDGET,
    MAX_TRANSPOSITION_N,
    BudgetExceeded,
    census,
    count_factorizations_arbitrary,
    count_factorizations_transpositions,
)
from .partitions import Partition
from .polyseries import series_to_json
from .trees import DEFAULT_MAX_N, DEFAULT_ORIENTATION, ORIENTATIONS, TreeBudgetExceeded, tree_report

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _alpha(text: str) -> Partition:
    try:
        alpha = Partition.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))
    if alpha.n < 1:
        raise argparse.ArgumentTypeError("alpha must be nonempty")
    return alpha


def _emit(doc) -> None:
    sys.stdout.write(json.dumps(doc, separators=(",", ":")) + "\n")


def cmd_h(args) -> int:
    _emit(h_alpha(args.alpha).to_json())
    return EXIT_OK


def cmd_g(args) -> int:
    if args.m is None or args.m < 2:
        raise UsageError("g needs --m >= 2")
    _emit(g_alpha(args.alpha, args.m).to_json())
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.transpositions == (args.m is not None):
        raise UsageError("oracle needs exactly one of --m or --transpositions")
    if args.transpositions:
        result = count_factorizations_transpositions(args.alpha, max_n=args.max_n)
    else:
        if args.m < 1:
            raise UsageError("--m must be at least 1")
        result = count_factorizations_arbitrary(args.alpha, args.m, budget=args.budget)
    _emit(result.to_json())
    return EXIT_OK


def cmd_verify(args) -> int:
    tag = "all" if args.all else args.id
    if tag is None:
        raise UsageError("verify needs --id or --all")
    if tag == "all":
        ms = (args.m,) if args.m is not None else (2, 3, 4)
        if any(m < 2 for m in ms):
            raise UsageError("--m must be at least 2")
        reports = [verify(t, args.order, m) for m in ms for t in G_FAMILY]
        reports += [verify(t, args.order) for t in H_FAMILY]
        ok = all(r.passed for r in reports)
        _emit({"order": args.order, "status": "pass" if ok else "fail",
               "reports": [r.to_json() for r in reports]})
        return EXIT_OK if ok else EXIT_FAIL
    if tag not in IDENTITIES:
        raise UsageError(f"unknown identity {tag!r}; choose from {', '.join(IDENTITIES)} or all")
    if tag in G_FAMILY and (args.m is None or args.m < 2):
        raise UsageError(f"{tag} needs --m >= 2")
    report = verify(tag, args.order, args.m)
    _emit(report.to_json())
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_trees(args) -> int:
    if args.m is None or args.m < 2:
        raise UsageError("trees needs --m >= 2")
    doc = tree_report(args.alpha, args.m, args.orientation, max_n=args.max_n)
    doc["prediction"] = str(doc["prediction"])
    _emit(doc)
    return EXIT_OK if doc["match"] else EXIT_FAIL


def cmd_series(args) -> int:
    if args.id not in SERIES_TAGS:
        raise UsageError(f"unknown series {args.id!r}; choose from {', '.join(SERIES_TAGS)}")
    try:
        series = build_series(args.id, args.order, args.m)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(series_to_json(series))
    return EXIT_OK


def cmd_census(args) -> int:
    if args.transpositions == (args.m is not None):
        raise UsageError("census needs exactly one of --m or --transpositions")
    if args.n < 1:
        raise UsageError("--n must be at least 1")
    m = None if args.transpositions else args.m
    if m is not None and m < 1:
        raise UsageError("--m must be at least 1")
    table = census(args.n, m, budget=args.budget, max_n=args.max_n)
    rows = []
    ok = True
    for alpha, result in table.items():
        formula = h_value(alpha) if m is None else (g_value(alpha, m) if m >= 2 else None)
        match = None if formula is None else result.count == formula
        ok = ok and match is not False
        rows.append({"alpha": list(alpha.parts), "count": str(result.count),
                     "formula": None if formula is None else str(formula), "match": match})
    if args.csv:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["alpha", "count", "formula", "match"])
        for r in rows:
            match = "" if r["match"] is None else str(r["match"]).lower()
            writer.writerow([",".join(map(str, r["alpha"])), r["count"], r["formula"] or "", match])
        sys.stdout.write(buf.getvalue())
    else:
        _emit({"n": args.n, "mode": "transpositions" if m is None else "arbitrary", "m": m,
               "status": "pass" if ok else "fail", "counts": rows})
    return EXIT_OK if ok else EXIT_FAIL


def cmd_selftest(args) -> int:
    results = acceptance.run_all()
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    _emit({"status": "pass" if ok else "fail", "criteria": [r.to_json() for r in results]})
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="covercount", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("h", help="closed-form H_alpha")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.set_defaults(func=cmd_h)

    p = sub.add_parser("g", help="closed-form G_alpha(m)")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(func=cmd_g)

    p = sub.add_parser("oracle", help="brute-force factorization count")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--transpositions", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max (n!)^(m-1) tuples")
    p.add_argument("--max-n", type=int, default=MAX_TRANSPOSITION_N, help="largest n for transpositions")
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check an identity coefficientwise")
    p.add_argument("--id")
    p.add_argument("--all", action="store_true")
    p.add_argument("--m", type=int)
    p.add_argument("--order", type=int, default=6)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("trees", help="count planted and balanced m-Eulerian trees")
    p.add_argument("--alpha", type=_alpha, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--orientation", choices=ORIENTATIONS, default=DEFAULT_ORIENTATION)
    p.add_argument("--max-n", type=int, default=DEFAULT_MAX_N)
    p.set_defaults(func=cmd_trees)

    p = sub.add_parser("series", help="dump a generating series as JSON")
    p.add_argument("--id", required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--order", type=int, default=4)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("census", help="oracle counts for every alpha of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--transpositions", action="store_true")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--max-n", type=int, default=MAX_TRANSPOSITION_N)
    fmt = p.add_mutually_exclusive_group()
    fmt.add_argument("--json", action="store_true", default=True)
    fmt.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("selftest", help="run the acceptance criteria")
    p.set_defaults(func=cmd_selftest)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "order", 0) is not None and getattr(args, "order", 0) < 0:
        parser.print_usage(sys.stderr)
        print("covercount: error: --order must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"covercount: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (BudgetExceeded, TreeBudgetExceeded) as exc:
        print(f"covercount: refused: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
