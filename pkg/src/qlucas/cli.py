"""``qlucas`` command line: eval, verify, list."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Sequence, TextIO

from . import identities
from .exactalg import LaurentPoly
from .fiblucas import fib, lucas
from .identities import REGISTRY, GridConfig, UnknownIdentity
from .qcore import q_catalan, q_hermite, rogers_szego
from .report import IdentityReport

FAMILIES = ("fib", "lucas", "lucas-star", "hermite", "rogers-szego", "catalan")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ID_WIDTH = 14
PARAM_WIDTH = 30


class UsageError(Exception):
    pass


def evaluate(family: str, n: int, star: bool = False) -> LaurentPoly:
    if star and family not in ("lucas", "lucas-star"):
        raise UsageError("--star only applies to the lucas family")
    if family == "fib":
        return fib(n)
    if family in ("lucas", "lucas-star"):
        return lucas(n, star=star or family == "lucas-star")
    if n < 0:
        raise UsageError(f"--family {family} needs n >= 0")
    if family == "hermite":
        return q_hermite(n)
    if family == "rogers-szego":
        return rogers_szego(n)
    if family == "catalan":
        return q_catalan(n)
    raise UsageError(f"unknown family {family!r}")


def _format_params(params: dict) -> str:
    return " ".join(f"{k}={v}" for k, v in params.items()) or "-"


def emit_report(r: IdentityReport, fmt: str = "text") -> str:
    if fmt == "json":
        return r.to_json()
    line = f"{r.status.upper():<4}  {r.id:<{ID_WIDTH}} {_format_params(r.params):<{PARAM_WIDTH}} {r.elapsed * 1000:10.3f} ms"
    if not r.passed:
        line += f"  diff: {r.counterexample}"
    return line


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qlucas", description="q-Fibonacci / q-Lucas polynomials and identity checks")
    sub = p.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", help="print one family member")
    ev.add_argument("--family", required=True, choices=FAMILIES)
    ev.add_argument("--n", required=True, type=int)
    ev.add_argument("--star", action="store_true", help="use L* (lucas family only)")

    ve = sub.add_parser("verify", help="run identity checks")
    which = ve.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--id", nargs="+", dest="ids", metavar="ID")
    ve.add_argument("--max-n", type=int, default=20)
    ve.add_argument("--m", nargs="+", type=int, dest="m_values", metavar="INT")
    ve.add_argument("--order", type=int, default=identities.qseries.DEFAULT_ORDER)
    ve.add_argument("--format", choices=("text", "json"), default="text")
    ve.add_argument("--parallel", action="store_true")

    sub.add_parser("list", help="show registered identities")
    return p


def _cmd_list(out: TextIO) -> int:
    for ident in REGISTRY.values():
        flag = "x=1" if ident.x1_only else "   "
        line = f"{ident.id:<{ID_WIDTH}} {ident.equation:<18} {flag}  {ident.grid_doc:<48} {ident.summary}"
        if ident.note:
            line += f"  [{ident.note}]"
        print(line, file=out)
    return EXIT_OK


def _cmd_verify(args, out: TextIO) -> int:
    if args.max_n < 0:
        raise UsageError("--max-n must be >= 0")
    if args.order < 1:
        raise UsageError("--order must be >= 1")
    ids = list(REGISTRY) if args.all else list(dict.fromkeys(args.ids))
    for i in ids:
        if i not in REGISTRY:
            raise UsageError(f"unknown identity id {i!r} (see `qlucas list`)")
    cfg = GridConfig(
        max_n=args.max_n,
        m_values=None if args.m_values is None else tuple(args.m_values),
        order=args.order,
    )
    points = list(identities.iter_points(ids, cfg))
    workers = min(8, os.cpu_count() or 1)
    failed = 0
    for report in identities.run_many(points, parallel=args.parallel, workers=workers):
        failed += not report.passed
        print(emit_report(report, args.format), file=out, flush=True)
    if args.format == "text":
        print(f"{len(points) - failed} passed, {failed} failed", file=out)
        for i in ids:
            if REGISTRY[i].note:
                print(f"note {i}: {REGISTRY[i].note}", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def main(argv: Sequence[str] | None = None, out: TextIO | None = None, err: TextIO | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    try:
        if args.command == "eval":
            print(evaluate(args.family, args.n, args.star).render(), file=out)
            return EXIT_OK
        if args.command == "list":
            return _cmd_list(out)
        return _cmd_verify(args, out)
    except (UsageError, UnknownIdentity) as e:
        print(f"qlucas: error: {e}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
