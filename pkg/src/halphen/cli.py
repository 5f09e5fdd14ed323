"""Command-line interface: ``halphen {figure1,figure2,table1,checks,solve}``.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 solver failure.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from . import experiments as ex
from .poly_remez import RemezConvergenceError
from .precision import ENV_VAR, get_precision_bits
from .rational_remez import RationalMinimaxError
from .svg import plot_rows

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _number(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError(f"n must be positive, got {text}")
    return int(v) if v.is_integer() else v


def _common(p):
    p.add_argument("--precision-bits", type=int, default=None,
                   help=f"significand bits (default: ${ENV_VAR} or 53)")
    p.add_argument("--grid-size", type=int, default=4096,
                   help="sampling points for rational fits (>= 257)")
    p.add_argument("--tol", type=float, default=None,
                   help="solver tolerance (experiment-specific default)")
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--plot", action="store_true",
                   help="also write an SVG next to --out (figure1, figure2)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="halphen",
                     description="Minimax approximation experiments for x^n.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("figure1", help="polynomial errors against the erfc model")
    p.add_argument("--n", type=_number, nargs="+", default=[250, 1000])
    p.add_argument("--kmax", type=int, default=None,
                   help="largest degree (default: model error >= 1e-10)")
    _common(p)

    p = sub.add_parser("figure2", help="rational errors against 2 H^(k+1/2)")
    p.add_argument("--n", type=_number, default=1000)
    p.add_argument("--kmax", type=int, default=8)
    _common(p)

    p = sub.add_parser("table1", help="adaptive Chebyshev degrees for x^n")
    p.add_argument("--n", type=_number, nargs="+", default=list(ex.TABLE1_DEGREES))
    _common(p)

    p = sub.add_parser("checks", help="run the verification suite")
    _common(p)

    p = sub.add_parser("solve", help="single minimax solve for x^n on [0, 1]")
    p.add_argument("--n", type=_number, required=True)
    p.add_argument("--k", type=int, default=None, help="degree (defaults to --kmax)")
    p.add_argument("--kmax", type=int, default=None)
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--poly", action="store_const", const="poly", dest="kind")
    kind.add_argument("--rational", action="store_const", const="rational", dest="kind")
    _common(p)
    return parser


def _config(args) -> ex.RunConfig:
    bits = args.precision_bits if args.precision_bits is not None else get_precision_bits()
    return ex.RunConfig(precision_bits=bits, grid_size=args.grid_size, tol=args.tol,
                        out=args.out, format=args.format, plot=args.plot, jobs=args.jobs)


def _run(args, config):
    cmd = args.command
    if cmd == "figure1":
        if args.kmax is not None and args.kmax < 0:
            raise UsageError("--kmax must be nonnegative")
        return ex.run_figure1(args.n, args.kmax, config)
    if cmd == "figure2":
        if args.kmax < 0:
            raise UsageError("--kmax must be nonnegative")
        return ex.run_figure2(args.n, args.kmax, config)
    if cmd == "table1":
        return ex.run_table1(config, tuple(args.n))
    if cmd == "checks":
        return ex.run_checks(config)
    k = args.k if args.k is not None else args.kmax
    if k is None or k < 0:
        raise UsageError("solve needs a nonnegative --k")
    return ex.run_solve(args.n, k, args.kind, config)


def _plot_path(args):
    if args.out:
        return os.path.splitext(args.out)[0] + ".svg"
    return f"{args.command}.svg"


def exit_status(rows) -> int:
    statuses = [r.status for r in rows]
    if any(s not in ex.SUCCESS and s != ex.FAIL for s in statuses):
        return EXIT_SOLVER
    if any(s == ex.FAIL for s in statuses):
        return EXIT_CHECK
    return EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = _config(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"halphen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING)

    try:
        rows = _run(args, config)
    except UsageError as exc:
        print(f"halphen: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RemezConvergenceError, RationalMinimaxError, ArithmeticError) as exc:
        print(f"halphen: solver failure: {exc}", file=sys.stderr)
        return EXIT_SOLVER

    ex.write_rows(rows, config, stream=sys.stdout)
    if args.plot:
        if args.command in ("figure1", "figure2"):
            path = plot_rows(rows, _plot_path(args), args.command,
                             quadratic_x=args.command == "figure1",
                             title="polynomial" if args.command == "figure1"
                             else "rational type (k, k)")
            print(f"halphen: wrote {path}", file=sys.stderr)
        else:
            print(f"halphen: no plot for {args.command}", file=sys.stderr)
    return exit_status(rows)


if __name__ == "__main__":
    sys.exit(main())
