"""Command line front end.

Three subcommands: ``analyze`` builds a JSON report of matching results
for one semigroup, ``verify`` runs a named batch suite and prints one
pass/fail line per check, ``export`` emits graphs and tables in text
form.  Exit codes: 0 success, 1 suite failure, 2 usage or scale error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import reports
from .core import SemigroupError, dump_table
from .graphs import dot_double_cover, dot_incidence_graph, dot_inverse_graph
from .greens import eggbox_text

EMIT_KINDS = ("dot-inverse", "dot-cover", "dot-incidence", "eggbox", "table")


def _write_output(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def cmd_analyze(args) -> int:
    s = reports.load_semigroup(args.semigroup)
    report = reports.analyze(s, mode=args.mode)
    _write_output(reports.report_json(report), args.out)
    return 0


def cmd_verify(args) -> int:
    checks = reports.run_suite(args.suite, args.max_n)
    for check in checks:
        print(check.line())
    passed = sum(1 for check in checks if check.ok)
    print(f"{passed}/{len(checks)} checks passed")
    return 0 if passed == len(checks) else 1


def cmd_export(args) -> int:
    s = reports.load_semigroup(args.semigroup)
    if args.emit in ("dot-inverse", "dot-cover") and s.order > reports.INVERSE_GRAPH_ORDER_LIMIT:
        raise SemigroupError(
            f"order {s.order} exceeds the inverse-graph limit "
            f"({reports.INVERSE_GRAPH_ORDER_LIMIT})")
    emit = {
        "dot-inverse": dot_inverse_graph,
        "dot-cover": dot_double_cover,
        "dot-incidence": dot_incidence_graph,
        "eggbox": eggbox_text,
        "table": dump_table,
    }[args.emit]
    _write_output(emit(s), args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="invmatch",
        description="Decide and construct matchings by inverses on finite semigroups.")
    sub = parser.add_subparsers(dest="command", required=True)

    analyze = sub.add_parser(
        "analyze", help="report matching results for one semigroup as JSON")
    analyze.add_argument(
        "--semigroup", required=True, metavar="SOURCE",
        help="bundled name, tn:N, ptn:N, opn:N, rees:<file>, or table:<file>")
    analyze.add_argument("--mode", choices=reports.ANALYZE_MODES, default="all",
                         help="which matchings to decide (default: all)")
    analyze.add_argument("--out", help="write the report here instead of stdout")

    verify = sub.add_parser("verify", help="run a named verification suite")
    verify.add_argument("--suite", required=True,
                        choices=(*reports.SUITES, "all"))
    verify.add_argument("--max-n", type=int, default=None,
                        help="override the suite's size ceiling")

    export = sub.add_parser("export", help="emit graphs or tables as text")
    export.add_argument("--semigroup", required=True, metavar="SOURCE")
    export.add_argument("--emit", required=True, choices=EMIT_KINDS)
    export.add_argument("--out", help="write here instead of stdout")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handler = {"analyze": cmd_analyze, "verify": cmd_verify, "export": cmd_export}
    try:
        return handler[args.command](args)
    except SemigroupError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
