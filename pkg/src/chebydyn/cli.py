"""Command-line front end.

Exit codes: 0 success / everything matched, 1 a verified mismatch
(DISAGREE or MISMATCH), 2 usage or configuration error.
"""

from __future__ import annotations

import argparse
import sys
from collections import Counter
from pathlib import Path

from .chebyshev import RingSpec, evaluate, is_permutation, iterate
from .errors import ChebyError
from .export import graph_to_dot, report_to_csv, spectrum_to_json
from .graph import CLASSES, build_graph, observed_spectrum, selfloops_p3
from .period import closed_periods, oracle_periods, period_closed, period_oracle
from .sweep import ConfigError, load_config, run_verify

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _ring(args) -> RingSpec:
    if args.p not in (2, 3):
        raise UsageError(f"--p must be 2 or 3, got {args.p}")
    if args.k < 1:
        raise UsageError(f"--k must be >= 1, got {args.k}")
    return RingSpec(args.p, args.k)


def _require_perm(n: int, p: int) -> None:
    if n < 1 or not is_permutation(n, p):
        raise UsageError(f"T_{n} is not a permutation of Z/{p}^k")


def _check_x(x: int, ring: RingSpec) -> None:
    if not 0 <= x < ring.m:
        raise UsageError(f"--x must lie in [0, {ring.m}), got {x}")


def cmd_eval(args, out) -> int:
    ring = _ring(args)
    if not args.allow_any:
        _require_perm(args.n, ring.p)
    _check_x(args.x, ring)
    if args.iters < 0:
        raise UsageError("--iters must be >= 0")
    value = evaluate(args.n, args.x, ring) if args.iters == 1 else iterate(args.n, args.x, ring, args.iters)
    print(value, file=out)
    return EXIT_OK


def cmd_period(args, out) -> int:
    ring = _ring(args)
    _require_perm(args.n, ring.p)
    n, p, k = args.n, ring.p, ring.k
    if args.x is not None:
        _check_x(args.x, ring)
        closed = period_closed(n, p, k, args.x)
        if not args.oracle:
            print(closed, file=out)
            return EXIT_OK
        oracle = period_oracle(n, p, k, args.x)
        status = "AGREE" if oracle == closed else "DISAGREE"
        print(f"closed={closed} oracle={oracle} {status}", file=out)
        return EXIT_OK if status == "AGREE" else EXIT_MISMATCH

    closed = closed_periods(n, p, k).tolist()
    oracle = oracle_periods(n, p, k).tolist() if args.oracle else None
    print("x,period,oracle,status" if oracle else "x,period", file=out)
    disagree = 0
    for x, c in enumerate(closed):
        if oracle is None:
            print(f"{x},{c}", file=out)
            continue
        status = "AGREE" if oracle[x] == c else "DISAGREE"
        disagree += status == "DISAGREE"
        print(f"{x},{c},{oracle[x]},{status}", file=out)
    states = Counter(closed)
    cycles = {length: states[length] // length for length in sorted(states)}
    print("# cycles: {" + ", ".join(f"{a}: {b}" for a, b in cycles.items()) + "}", file=out)
    if oracle is not None:
        print(f"# disagreements: {disagree}", file=out)
    return EXIT_MISMATCH if disagree else EXIT_OK


def cmd_graph(args, out) -> int:
    ring = _ring(args)
    _require_perm(args.n, ring.p)
    if args.cls not in ("all", *CLASSES[ring.p]):
        raise UsageError(f"--class {args.cls} does not apply to p={ring.p}")
    g = build_graph(args.n, ring)
    if args.format == "dot":
        text = graph_to_dot(g)
    else:
        text = spectrum_to_json(observed_spectrum(g, args.cls), args.n, ring.p, ring.k, args.cls)
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)
    return EXIT_OK


def _print_report(report, out) -> None:
    tag = "MATCH" if report.match else "MISMATCH"
    print(f"n={report.n} p={report.p} k={report.k} {tag}", file=out)
    for cls, length, pred, obs in report.mismatches:
        print(f"  class={cls} length={length} predicted={pred} observed={obs}", file=out)


def cmd_verify(args, out) -> int:
    out_dir = None
    if args.sweep:
        try:
            cfg = load_config(args.sweep)
        except (OSError, ConfigError) as exc:
            raise UsageError(f"config {args.sweep}: {exc}") from None
        tasks, workers, out_dir = cfg.tuples(), args.workers or cfg.workers, cfg.out
    else:
        if None in (args.n, args.p, args.k):
            raise UsageError("give --n, --p and --k, or --sweep FILE")
        ring = _ring(args)
        _require_perm(args.n, ring.p)
        tasks, workers = [(args.n, ring.p, ring.k)], 1
    reports = run_verify(tasks, workers)
    for report in reports:
        _print_report(report, out)
        if out_dir is not None:
            out_dir.mkdir(parents=True, exist_ok=True)
            name = f"verify_n{report.n}_p{report.p}_k{report.k}.csv"
            (out_dir / name).write_text(report_to_csv(report))
    if args.csv and len(reports) == 1:
        Path(args.csv).write_text(report_to_csv(reports[0]))
    bad = sum(not r.match for r in reports)
    print(f"summary: {len(reports)} checked, {len(reports) - bad} match, {bad} mismatch", file=out)
    return EXIT_MISMATCH if bad else EXIT_OK


def cmd_selfloops(args, out) -> int:
    _require_perm(args.n, 3)
    if args.k < 1:
        raise UsageError("--k must be >= 1")
    members = sorted(selfloops_p3(args.n, args.k))
    print(" ".join(map(str, members)), file=out)
    print(f"# count: {len(members)}", file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chebydyn",
        description="Periods and cycle structure of Chebyshev permutation maps over Z/2^k and Z/3^k.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def ring_args(sp, required=True):
        sp.add_argument("--n", type=int, required=required, help="polynomial degree")
        sp.add_argument("--p", type=int, required=required, help="prime, 2 or 3")
        sp.add_argument("--k", type=int, required=required, help="exponent, modulus is p^k")

    sp = sub.add_parser("eval", help="print T_n^i(x) mod p^k")
    ring_args(sp)
    sp.add_argument("--x", type=int, required=True)
    sp.add_argument("--iters", type=int, default=1)
    sp.add_argument("--allow-any", action="store_true", help="skip the permutation-degree check")
    sp.set_defaults(func=cmd_eval)

    sp = sub.add_parser("period", help="closed-form least period(s)")
    ring_args(sp)
    which = sp.add_mutually_exclusive_group(required=True)
    which.add_argument("--x", type=int)
    which.add_argument("--all", action="store_true", help="CSV over every state")
    sp.add_argument("--oracle", action="store_true", help="also iterate by brute force and compare")
    sp.set_defaults(func=cmd_period)

    sp = sub.add_parser("graph", help="export the functional graph (dot) or its spectrum (json)")
    ring_args(sp)
    sp.add_argument("--format", choices=("dot", "json"), default="json")
    sp.add_argument("--class", dest="cls", default="all", choices=("all", "odd", "even", "zero", "pm1"))
    sp.add_argument("--out", help="write here instead of stdout")
    sp.set_defaults(func=cmd_graph)

    sp = sub.add_parser("verify", help="compare predicted and observed spectra")
    ring_args(sp, required=False)
    sp.add_argument("--sweep", help="key=value sweep config file")
    sp.add_argument("--workers", type=int, help="override the config's worker count")
    sp.add_argument("--csv", help="write the single report as CSV")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("selfloops", help="self-loops x = +-1 mod 3 over Z/3^k")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)
    sp.set_defaults(func=cmd_selfloops)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except (UsageError, ChebyError) as exc:
        print(f"chebydyn: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
