"""Command-line entry point.

Subcommands build the set families, verify their exact measure identities, and
evaluate the limsup lower bounds on measure tables.  Every number printed is an
exact rational "p/q"; JSON output is deterministic (sorted keys).  Exit codes:
0 pass, 1 verification failure (a JSON witness goes to stdout), 2 usage or
resource errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import blocks, bounds, inclusion_exclusion, nested, parity, t12
from .intervals import format_rational, parse_rational

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _dump(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def _write_atomic(path: str, text: str):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def _emit(args, data) -> None:
    text = _dump(data)
    if getattr(args, "out", None):
        _write_atomic(args.out, text)
    else:
        sys.stdout.write(text)


def _cmd_build_parity(args) -> int:
    fam = parity.build_parity_family(args.m)
    payload = fam.to_json()
    if args.verify:
        report = parity.verify_parity_properties(fam)
        payload["report"] = report.to_json()
        if not report.passed:
            _emit(args, payload)
            return EXIT_FAIL
    _emit(args, payload)
    return EXIT_PASS


def _cmd_build_blocks(args) -> int:
    fam = blocks.build_block_family(args.m, args.blocks, parse_rational(args.c))
    payload = fam.to_json()
    payload["block_unions"] = [
        [k, format_rational(ua), format_rational(ub)]
        for k, ua, ub in blocks.tail_union_measures(fam)
    ]
    failed = False
    if args.verify:
        l_max = args.lmax if args.lmax else args.m
        report = blocks.verify_block_equalities(fam, l_max)
        payload["report"] = report.to_json()
        failed = not report.passed
    if args.table:
        table = bounds.MeasureTable.from_sets(fam.A, max_len=args.table_max_len)
        _write_atomic(args.table, table.to_csv())
    _emit(args, payload)
    return EXIT_FAIL if failed else EXIT_PASS


def _cmd_gpq(args) -> int:
    params = nested.NestedParams(args.p, args.q)
    if args.backend == "formula":
        payload = {
            "p": args.p,
            "q": args.q,
            "depth": args.depth,
            "G_measures": [
                format_rational(nested.intersection_measure_formula(params, (i,)))
                for i in range(1, args.depth + 1)
            ],
        }
        _emit(args, payload)
        return EXIT_PASS
    levels = nested.build_nested_explicit(params, args.depth)
    payload = {
        "p": args.p,
        "q": args.q,
        "depth": args.depth,
        "levels": [
            {"n": lev.n, "H": lev.H.to_json(), "G": lev.G.to_json()} for lev in levels
        ],
    }
    if args.verify:
        report = nested.verify_nested(params, args.depth, levels=levels)
        payload["report"] = report.to_json()
        if not report.passed:
            _emit(args, payload)
            return EXIT_FAIL
    _emit(args, payload)
    return EXIT_PASS


def _cmd_build_t12(args) -> int:
    constants = t12.make_constants(args.m, args.strategy, args.assignment)
    fam = t12.build_t12_family(
        constants, args.depth, backend=args.backend, c_limsup=parse_rational(args.c)
    )
    payload = {"constants": constants.to_json(), "depth": args.depth,
               "backend": args.backend, "c_limsup": args.c}
    if args.backend == "explicit":
        payload["A"] = [s.to_json() for s in fam.A]
        payload["B"] = [s.to_json() for s in fam.B]
        payload["floats"] = [s.to_json() for s in fam.floats]
    _emit(args, payload)
    return EXIT_PASS


def _cmd_verify_t12(args) -> int:
    constants = t12.make_constants(args.m, args.strategy, args.assignment)
    system = t12.verify_inequality_system(constants)
    payload = {"constants": constants.to_json(), "system": system.to_json()}
    ok = system.passed
    if args.depth:
        backend = "explicit" if args.strategy == "compact" else "formula"
        fam = t12.build_t12_family(constants, args.depth, backend=backend)
        claims = t12.verify_t12_claims(fam, args.depth)
        payload["claims"] = claims.to_json()
        ok = ok and claims.passed
    _emit(args, payload)
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_bounds(args) -> int:
    table = bounds.ingest_table(args.input, fmt=args.format)
    report = bounds.bounds_report(
        table, args.upto, kochen_stone=args.kochen_stone, frolov=args.frolov
    )
    if args.csv_out:
        _write_atomic(args.csv_out, report.to_csv())
    _emit(args, report.to_json())
    return EXIT_PASS


def _cmd_incl_excl(args) -> int:
    table_a = bounds.ingest_table(args.a, fmt=args.format)
    table_b = bounds.ingest_table(args.b, fmt=args.format)
    try:
        if args.mode == "thm13":
            comparisons = inclusion_exclusion.verify_thm_equal_unions(
                table_a, table_b, args.kmax, args.nmax, cap=args.cap
            )
        else:
            comparisons = inclusion_exclusion.verify_thm_ordered_unions(
                table_a, table_b, args.kmax, args.nmax, cap=args.cap
            )
    except inclusion_exclusion.HypothesisViolation as exc:
        _emit(args, {"error": str(exc), "witness": list(exc.indices)})
        return EXIT_FAIL
    payload = {"mode": args.mode, "comparisons": [c.to_json() for c in comparisons]}
    _emit(args, payload)
    if any(c.relation == "violated" for c in comparisons):
        return EXIT_FAIL
    return EXIT_PASS


def _cmd_export(args) -> int:
    with open(args.family) as fh:
        data = json.load(fh)
    fam = blocks.family_from_json(data)
    sets = fam.A if args.side == "A" else fam.B
    table = bounds.MeasureTable.from_sets(
        sets, max_len=args.max_len, window=args.window
    )
    _write_atomic(args.out, table.to_csv())
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="limsuplab",
        description="exact interval-set constructions and limsup bound evaluation",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-parity", help="build and optionally verify a parity family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build_parity)

    p = sub.add_parser("build-blocks", help="build the iterated block family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--blocks", type=int, required=True)
    p.add_argument("--c", default="1/1")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--lmax", type=int, default=0)
    p.add_argument("--out")
    p.add_argument("--table", help="also write a CSV measure table for the A sets")
    p.add_argument("--table-max-len", type=int, default=3)
    p.set_defaults(func=_cmd_build_blocks)

    p = sub.add_parser("gpq", help="build the nested G/H system")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--backend", choices=["explicit", "formula"], default="explicit")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_gpq)

    p = sub.add_parser("build-t12", help="build an alternating counterexample family")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strategy", choices=["paper", "compact"], default="paper")
    p.add_argument("--assignment", choices=["row", "column"], default="row")
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--backend", choices=["explicit", "formula"], default="formula")
    p.add_argument("--c", default="1/1", help="global limsup scaling in (0,1]")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_build_t12)

    p = sub.add_parser("verify-t12", help="verify the constant system and family claims")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--strategy", choices=["paper", "compact"], default="paper")
    p.add_argument("--assignment", choices=["row", "column"], default="row")
    p.add_argument("--depth", type=int, default=0,
                   help="also check the alternating claims up to this depth")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_verify_t12)

    p = sub.add_parser("bounds", help="evaluate limsup lower bounds on a table")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--upto", type=int, required=True)
    p.add_argument("--kochen-stone", action="store_true")
    p.add_argument("--frolov", action="store_true")
    p.add_argument("--out")
    p.add_argument("--csv-out", help="plot-ready CSV (n, ks_ratio, frolov_bound)")
    p.set_defaults(func=_cmd_bounds)

    p = sub.add_parser("incl-excl", help="compare union measures of two tables")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--mode", choices=["thm13", "thm14"], required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--nmax", type=int, required=True)
    p.add_argument("--cap", type=int, default=inclusion_exclusion.DEFAULT_RANGE_CAP)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_incl_excl)

    p = sub.add_parser("export", help="family JSON -> measure table CSV")
    p.add_argument("--family", required=True)
    p.add_argument("--side", choices=["A", "B"], default="A")
    p.add_argument("--max-len", type=int, default=None)
    p.add_argument("--window", type=int, default=None)
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0,) else 0
    try:
        return args.func(args)
    except (ValueError, OSError, t12.CompactSearchError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
