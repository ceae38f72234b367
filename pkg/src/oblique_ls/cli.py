"""Command-line front end: ``table``, ``sweep-c`` and ``solve``.

Exit status: 0 on success or convergence, 1 on usage, parse or solver
errors, 2 when ``solve`` stops at the iteration cap.
"""
import argparse
import sys

from .bench import TableSpec, run_sweep_c, run_table
from .errors import ObliqueLSError
from .mmio import read_dense_matrix, read_vector, write_vector
from .solvers import (METHODS, ObliqueConfig, SkipMode, StopMode, StopRule, Termination,
                      solve_method)

EXIT_OK, EXIT_ERROR, EXIT_NOT_CONVERGED = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text):
    return [int(v) for v in text.split(",") if v]


def _float_list(text):
    return [float(v) for v in text.split(",") if v]


def _method_list(text):
    methods = [v.strip().upper() for v in text.split(",") if v.strip()]
    bad = [m for m in methods if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {METHODS}")
    return methods


def _add_stop_flags(p, mode_default, max_iters_default):
    p.add_argument("--stop-mode", choices=[m.value for m in StopMode], default=mode_default)
    p.add_argument("--threshold", type=float, default=0.5e-6)
    p.add_argument("--max-iters", type=int, default=max_iters_default)
    p.add_argument("--check-every", type=int, default=None)
    p.add_argument("--epsilon", type=float, default=1e-12,
                   help="oblique skip tolerance, relative to ||A_i||^2")
    p.add_argument("--absolute-epsilon", action="store_true",
                   help="treat --epsilon as an absolute bound on g")


def build_parser():
    parser = _Parser(prog="oblique-ls", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    t = sub.add_parser("table", help="median IT/CPU table over repeated random problems")
    t.add_argument("--rows", type=_int_list, required=True, help="comma-separated m values")
    t.add_argument("--cols", type=_int_list, required=True, help="comma-separated n values")
    t.add_argument("--c", type=_float_list, default=[0.0], help="comma-separated lower endpoints")
    t.add_argument("--consistent", action=argparse.BooleanOptionalAction, default=True)
    t.add_argument("--methods", type=_method_list, default=list(METHODS))
    t.add_argument("--repeats", type=int, default=50)
    t.add_argument("--seed", type=int, default=0)
    t.add_argument("--workers", type=int, default=1)
    t.add_argument("--out", default="-")
    _add_stop_flags(t, StopMode.RESIDUAL_RELATIVE_ERROR.value, 500_000)

    s = sub.add_parser("sweep-c", help="kappa_F^2 and CD/RCD iterations versus c")
    s.add_argument("--rows", type=int, default=3000)
    s.add_argument("--cols", type=int, default=50)
    s.add_argument("--c", type=_float_list,
                   default=[0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9])
    s.add_argument("--methods", type=_method_list, default=["CD", "RCD"])
    s.add_argument("--repeats", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--out", default="-")
    s.add_argument("--threshold", type=float, default=0.5e-6)
    s.add_argument("--max-iters", type=int, default=800_000)

    v = sub.add_parser("solve", help="solve a MatrixMarket system from files")
    v.add_argument("matrix", help="MatrixMarket 'array real general' file")
    v.add_argument("rhs", help="whitespace-separated right-hand side")
    v.add_argument("--method", type=str.upper, choices=METHODS, default="GSO")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--x-star", help="reference solution file (solution-error mode)")
    v.add_argument("--out", default="-", help="solution file, '-' for stdout")
    _add_stop_flags(v, StopMode.GRADIENT_RELATIVE.value, 500_000)
    return parser


def _stop(args):
    return StopRule(StopMode(args.stop_mode), args.threshold, args.max_iters, args.check_every)


def _cfg(args):
    mode = SkipMode.ABSOLUTE if args.absolute_epsilon else SkipMode.RELATIVE_TO_NORM_SQ
    return ObliqueConfig(mode, args.epsilon)


def _emit(text, out):
    if out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def cmd_table(args):
    specs = [TableSpec(m, n, c, args.consistent)
             for c in args.c for n in args.cols for m in args.rows]
    table = run_table(specs, args.methods, args.repeats, args.seed, _stop(args), _cfg(args),
                      workers=args.workers)
    _emit(table.to_csv(), args.out)
    return EXIT_OK


def cmd_sweep(args):
    stop = StopRule(threshold=args.threshold, max_iters=args.max_iters)
    table = run_sweep_c(args.rows, args.cols, args.c, args.repeats, args.seed,
                        args.max_iters, args.methods, stop=stop, workers=args.workers)
    _emit(table.to_csv(), args.out)
    return EXIT_OK


def solve_file(matrix_path, rhs_path, method="GSO", stop=None, cfg=None, seed=0,
               x_star_path=None, out="-"):
    """Solve the system stored in files and write the iterate.

    Returns ``(report, exit_status)``; the iterate is written one value per
    line with 17 significant digits.
    """
    A = read_dense_matrix(matrix_path)
    b = read_vector(rhs_path, A.rows)
    x_star = read_vector(x_star_path, A.cols) if x_star_path else None
    stop = StopRule(StopMode.GRADIENT_RELATIVE) if stop is None else stop
    method = method.upper()
    report = solve_method(method, A, b, None, stop, cfg, x_star=x_star, rng=seed)
    summary = (f"method={method} iterations={report.iterations} "
               f"updates={report.updates_applied} skips={report.skips} "
               f"termination={report.termination.value} "
               f"{stop.mode.value}={report.final_metric:.6e}\n")
    if out == "-":
        write_vector(sys.stdout, report.x_final)
        sys.stderr.write(summary)
    else:
        write_vector(out, report.x_final)
        sys.stdout.write(summary)
    status = EXIT_OK if report.termination is Termination.CONVERGED else EXIT_NOT_CONVERGED
    return report, status


def cmd_solve(args):
    _, status = solve_file(args.matrix, args.rhs, args.method, _stop(args), _cfg(args),
                           args.seed, args.x_star, args.out)
    return status


def main(argv=None):
    args = build_parser().parse_args(argv)
    handler = {"table": cmd_table, "sweep-c": cmd_sweep, "solve": cmd_solve}[args.command]
    try:
        return handler(args)
    except (ObliqueLSError, ValueError, OSError) as exc:
        print(f"oblique-ls {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
