"""Command-line entry point.

Subcommands:
  verify <suite>     run a seeded verification suite and render its report
  amalgam run        amalgamate an instance file, emit the certificate
  interval report    cut classes, cofinalities and densities of an order
  pi                 density of the algebra presented by a file

Exit codes: 0 all checks passed, 1 a check failed, 2 bad input/usage.
The master seed defaults to the MONKBENCH_SEED environment variable.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import ba, cuts, forcing, intervals, terms
from .errors import MonkbenchError, PreconditionError
from .harness import DEFAULT_COUNTS, SUITE_NAMES, Report, SuiteConfig, run_suite
from .reporting import write_report
from .symcard import symcard_to_json


def _default_seed() -> int:
    raw = os.environ.get("MONKBENCH_SEED", "0")
    try:
        return int(raw)
    except ValueError:
        raise MonkbenchError(f"MONKBENCH_SEED={raw!r} is not an integer") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="monkbench")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("suite", choices=list(SUITE_NAMES) + ["all"])
    p_verify.add_argument("--seed", type=int, default=None)
    p_verify.add_argument("--count", type=int, default=None)
    p_verify.add_argument("--parallel", action="store_true")
    p_verify.add_argument("--out-dir", default=None,
                          help="render report.json/.csv/.png into this directory")
    p_verify.add_argument("--json", action="store_true", help="print the JSON report")

    p_amalgam = sub.add_parser("amalgam", help="amalgamation operations")
    amalgam_sub = p_amalgam.add_subparsers(dest="amalgam_command", required=True)
    p_run = amalgam_sub.add_parser("run", help="amalgamate an instance file")
    p_run.add_argument("--input", required=True)
    p_run.add_argument("--out", default=None, help="write the certificate JSON here")

    p_interval = sub.add_parser("interval", help="interval-algebra operations")
    interval_sub = p_interval.add_subparsers(dest="interval_command", required=True)
    p_report = interval_sub.add_parser("report", help="cut classes of an order")
    p_report.add_argument("--order", required=True,
                          help='order description: "fin:n", "Q", or "lexQ:<token>"')
    p_report.add_argument("--json", action="store_true")

    p_pi = sub.add_parser("pi", help="density of a presented algebra")
    p_pi.add_argument("--input", required=True)
    p_pi.add_argument("--json", action="store_true")
    return parser


def _cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    count = args.count
    if count is None:
        count = 1 if args.suite == "all" else DEFAULT_COUNTS[args.suite]
    report = run_suite(SuiteConfig(args.suite, seed, count, parallel=args.parallel))
    if args.out_dir:
        paths = write_report(report, args.out_dir)
        print(f"report written: {paths['json']}, {paths['csv']}, {paths['figure']}")
    if args.json:
        json.dump(report.to_json(), sys.stdout, indent=2)
        print()
    else:
        _print_summary(report)
    return 0 if report.ok else 1


def _print_summary(report: Report) -> None:
    subs = report.sub_reports if report.sub_reports else [report]
    for sub in subs:
        failed = len(sub.failures)
        status = "PASS" if failed == 0 else "FAIL"
        print(f"{status} {sub.suite}: {len(sub.cases) - failed}/{len(sub.cases)} cases "
              f"(seed {sub.seed}, {sub.wall_time:.2f}s)")
        for case in sub.failures[:5]:
            print(f"  failed case {case.index} (seed {case.seed}): {case.digest}")


def _cmd_amalgam_run(args) -> int:
    with open(args.input) as fh:
        obj = json.load(fh)
    inst = forcing.amalgam_instance_from_json(obj)
    try:
        q, star, cert = forcing.m_amalgam(inst)
    except PreconditionError as exc:
        print(f"rejected at clause {exc.clause}: {exc}", file=sys.stderr)
        return 1
    result = {
        "q": ba.presentation_to_json(q),
        "tau_star": terms.to_sexpr(star),
        "certificate": cert.to_json(),
        "pass": cert.ok,
    }
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(result, fh, indent=2)
            fh.write("\n")
    else:
        json.dump(result, sys.stdout, indent=2)
        print()
    return 0


def _cmd_interval_report(args) -> int:
    order = intervals.parse_order(args.order)
    rows = []
    for cut in cuts.representative_cuts(order):
        lo, hi = cuts.cut_cofinalities(order, cut)
        rows.append((cut, lo, hi, cuts.pi_of_cut(order, cut)))
    pichi = cuts.pichi_order(order)
    n_ultra = (
        len(cuts.enumerate_ultrafilters_finite(order))
        if isinstance(order, intervals.FiniteOrder) else None
    )
    if args.json:
        out = {
            "order": args.order,
            "cuts": [
                {
                    "cut": cuts.cut_to_json(cut),
                    "cofinalities": [symcard_to_json(lo), symcard_to_json(hi)],
                    "pi": symcard_to_json(pi),
                }
                for cut, lo, hi, pi in rows
            ],
            "pichi": symcard_to_json(pichi),
        }
        if n_ultra is not None:
            out["ultrafilters"] = n_ultra
        json.dump(out, sys.stdout, indent=2)
        print()
    else:
        for cut, lo, hi, pi in rows:
            label = json.dumps(cuts.cut_to_json(cut))
            print(f"cut {label}: cofinalities ({lo}, {hi}), pi {pi}")
        print(f"pichi: {pichi}")
        if n_ultra is not None:
            print(f"ultrafilters: {n_ultra}")
    return 0


def _cmd_pi(args) -> int:
    P = ba.load_presentation(args.input)
    # full agreement classes are singletons, so the atom count is |F|;
    # cross-check by closure when the carrier is small enough to build
    pi = len(P.F)
    try:
        carrier = ba.subalgebra_closure(
            P, [ba.denote(terms.Gen(a), P) for a in P.w]
        )
        if ba.pi_density(carrier) != pi:
            print("internal disagreement between atom count and closure", file=sys.stderr)
            return 1
    except MonkbenchError:
        pass  # carrier too large; the class count stands on its own
    if args.json:
        json.dump({"pi": pi}, sys.stdout)
        print()
    else:
        print(pi)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "amalgam":
            return _cmd_amalgam_run(args)
        if args.command == "interval":
            return _cmd_interval_report(args)
        if args.command == "pi":
            return _cmd_pi(args)
    except (MonkbenchError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    raise AssertionError("unreachable: argparse enforces a known command")


if __name__ == "__main__":
    sys.exit(main())
