"""Command line front end.

Usage:
    colebrook-pade solve --re 8.31e3 --eps 0.024 --x0 6.279860788 --trace
    colebrook-pade table1 --order 2,3 --zmin 0.6 --zmax 1.6 --step 0.05
    colebrook-pade sweep --re-points 20 --start poly > sweep.csv
    colebrook-pade bench --grid 20 --repeats 5
    colebrook-pade example 1

Exit codes: 0 success, 1 usage error, 2 a requested solve did not converge.
Numbers are printed with at least nine significant digits; values below
1e-4 in magnitude use scientific notation.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import statistics
import sys
import time
import warnings
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from .colebrook import FlowConditions
from .exceptions import BracketError, ConfigError, DomainError, DomainWarning
from .instrumentation import CostModel, cost_estimate, tally_solve
from .pade_log import PadeOrder, error_table
from .solvers import (
    SolverConfig,
    solve_one_log,
    solve_oracle_high_precision,
    solve_reference_newton,
)

__all__ = ["main", "fmt"]

EXIT_OK, EXIT_USAGE, EXIT_NOCONV = 0, 1, 2

DEFAULT_EPS = "0,1e-6,1e-5,1e-4,1e-3,1e-2,0.05"

#: starting points of the two reference worked examples: (Re, eps, x0)
WORKED_EXAMPLES = {
    "1": (8.31e3, 0.024, 6.279860788),
    "2": (2.5e6, 4e-4, 7.401979091),
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def fmt(v) -> str:
    """Locale-free number formatting used for every printed value."""
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    v = float(v)
    if v == 0.0:
        return "0"
    if not math.isfinite(v):
        return str(v)
    if abs(v) < 1e-4:
        return f"{v:.9e}"
    return f"{v:.12g}"


def _float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _order(text: str) -> PadeOrder:
    try:
        return PadeOrder.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _add_solver_flags(p, start_default="fixed"):
    g = p.add_argument_group("solver")
    g.add_argument("--start", choices=("fixed", "poly", "rough"), default=start_default,
                   help="initial guess strategy (default: %(default)s)")
    g.add_argument("--zmode", choices=("anchored", "chained"), default="anchored")
    g.add_argument("--dmode", choices=("recompute", "freeze", "unit"), default="recompute")
    g.add_argument("--fprime", choices=("analytic", "scaled"), default="analytic",
                   help="derivative formula; 'scaled' replays the reference worked traces")
    g.add_argument("--order", type=_order, default=PadeOrder.O23)
    g.add_argument("--tol", type=float, default=1e-7)
    g.add_argument("--max-iter", type=int, default=50)
    g.add_argument("--strict-band", action="store_true",
                   help="spend a true log when z leaves [0.6, 1.6]")
    g.add_argument("--exact-ln10", action="store_true",
                   help="use ln(10) to machine precision instead of 2.302585093")


def _config(args, x0=None) -> SolverConfig:
    try:
        return SolverConfig(
            initial_guess=x0 if x0 is not None else args.start,
            z_sequence=args.zmode,
            derivative_mode=args.dmode,
            fprime_form=args.fprime,
            pade_order=args.order,
            abs_tolerance_x=args.tol,
            max_iterations=args.max_iter,
            strict_band=args.strict_band,
            full_precision_ln10=args.exact_ln10,
        )
    except ConfigError as exc:
        raise UsageError(str(exc))


def _conditions(re, eps, stderr) -> FlowConditions:
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", DomainWarning)
        try:
            c = FlowConditions(re, eps)
        except DomainError as exc:
            raise UsageError(str(exc))
    for w in caught:
        print(f"warning: {w.message}", file=stderr)
    return c


# -- solve ------------------------------------------------------------------

def _format_trace(result, out):
    zmode = result.config.z_sequence
    print("Iteration 0", file=out)
    print(f"  x0 = {fmt(result.x0)}", file=out)
    for r in result.trace:
        i = r.index
        print(f"Iteration {i}", file=out)
        print(f"  y{i - 1} = {fmt(r.y)}", file=out)
        if r.z is not None:
            label = f"z0{i - 1}" if zmode == "anchored" else f"z{i - 2}{i - 1}"
            print(f"  {label} = {fmt(r.z)}", file=out)
        if r.pade_term is not None:
            print(f"  pade({result.config.pade_order}) = {fmt(r.pade_term)}", file=out)
        print(f"  log10(y{i - 1}) = {fmt(r.log10_y)}{'  [log call]' if r.true_log else ''}",
              file=out)
        print(f"  F(x{i - 1}) = {fmt(r.F)}", file=out)
        print(f"  F'(x{i - 1}) = {fmt(r.Fprime)}", file=out)
        print(f"  x{i} = {fmt(r.x_next)}", file=out)


def _print_summary(result, out):
    c = result.conditions
    rows = [
        ("Re", c.reynolds), ("eps", c.rel_roughness), ("method", result.method),
        ("x0", result.x0), ("x", result.x_final), ("lambda", result.friction_factor),
        ("iterations", result.iterations), ("converged", result.converged),
        ("log_calls", result.log_call_count),
    ]
    for k, v in rows:
        print(f"{k} = {v if isinstance(v, str) else fmt(v)}", file=out)
    for w in result.warnings:
        print(f"note: {w}", file=out)


def cmd_solve(args, out, err) -> int:
    c = _conditions(args.re, args.eps, err)
    cfg = _config(args, args.x0)
    solve = solve_reference_newton if args.method == "reference" else solve_one_log
    try:
        result = solve(c, cfg)
    except DomainError as exc:
        raise UsageError(str(exc))
    if args.json:
        json.dump(result.to_dict(), out, indent=2)
        out.write("\n")
    else:
        if args.trace:
            _format_trace(result, out)
        _print_summary(result, out)
    if not result.converged:
        print(f"error: no convergence within {cfg.max_iterations} iterations", file=err)
        return EXIT_NOCONV
    return EXIT_OK


def cmd_example(args, out, err) -> int:
    re, eps, x0 = WORKED_EXAMPLES[args.number]
    args.re, args.eps, args.x0 = re, eps, x0
    args.method, args.trace = "one_log", True
    return cmd_solve(args, out, err)


# -- table1 -----------------------------------------------------------------

def _z_grid(zmin, zmax, step) -> list[float]:
    if not (zmin > 0 and zmax >= zmin and step > 0):
        raise UsageError("need 0 < zmin <= zmax and step > 0")
    n = int(math.floor((zmax - zmin) / step + 1e-9))
    return [round(zmin + k * step, 12) for k in range(n + 1)]


def cmd_table1(args, out, err) -> int:
    rows = error_table(args.order, _z_grid(args.zmin, args.zmax, args.step))
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["z", "exact_log10", "pade_log10", "rel_err_percent"])
    for r in rows:
        w.writerow([fmt(r.z), fmt(r.exact_log10), fmt(r.approx_log10),
                    fmt(r.relative_error_percent)])
    return EXIT_OK


# -- sweep ------------------------------------------------------------------

SWEEP_COLUMNS = ["Re", "eps", "x0", "x_final", "lambda", "iterations", "log_calls",
                 "max_abs_z_minus_1", "err_vs_oracle", "status"]


def _grid(re_min, re_max, re_points, eps_values):
    if not (0 < re_min < re_max) or re_points < 2:
        raise UsageError("need 0 < re-min < re-max and re-points >= 2")
    if any(not 0 <= e <= 0.05 for e in eps_values) or not eps_values:
        raise UsageError("eps values must lie in [0, 0.05]")
    res = np.logspace(math.log10(re_min), math.log10(re_max), re_points)
    return [(float(re), float(e)) for re in res for e in eps_values]


def _sweep_row(point, cfg):
    re, eps = point
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DomainWarning)
        c = FlowConditions(re, eps)
    r = solve_one_log(c, cfg)
    status = "ok" if r.converged else "not_converged"
    try:
        err = abs(r.x_final - solve_oracle_high_precision(c))
    except BracketError:
        err, status = None, "oracle_bracket_failed"
    return [re, eps, r.x0, r.x_final, r.friction_factor, r.iterations, r.log_call_count,
            r.max_abs_z_minus_1, err, status], r.converged


def cmd_sweep(args, out, err) -> int:
    points = _grid(args.re_min, args.re_max, args.re_points, args.eps)
    points.sort()
    cfg = _config(args)
    outside = sum(not (4000 < re < 1e8 and eps < 0.05) for re, eps in points)
    if outside:
        print(f"warning: {outside} grid points lie outside 4000 < Re < 1e8, "
              "0 <= eps < 0.05", file=err)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_sweep_row, points, [cfg] * len(points)))
    else:
        rows = [_sweep_row(p, cfg) for p in points]
    w = csv.writer(out, lineterminator="\n")
    w.writerow(SWEEP_COLUMNS)
    for row, _ in rows:
        w.writerow([v if isinstance(v, str) else fmt(v) for v in row])
    return EXIT_OK if all(ok for _, ok in rows) else EXIT_NOCONV


# -- bench ------------------------------------------------------------------

def _run_grid(solver, conds, cfg):
    return [solver(c, cfg) for c in conds]


def cmd_bench(args, out, err) -> int:
    if args.repeats < 1:
        raise UsageError("--repeats must be >= 1")
    points = _grid(4000.0, 1e8, args.grid, args.eps)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", DomainWarning)
        conds = [FlowConditions(re, eps) for re, eps in points]
    cfg = _config(args)
    model = CostModel()
    summary = {}
    for name, solver in (("one_log", solve_one_log), ("reference", solve_reference_newton)):
        results = _run_grid(solver, conds, cfg)
        times = []
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            _run_grid(solver, conds, cfg)
            times.append(time.perf_counter() - t0)
        costs = [cost_estimate(tally_solve(r), model) for r in results]
        summary[name] = dict(
            results=results,
            cost=sum(costs),
            iterations=sum(r.iterations for r in results),
            logs=sum(r.log_call_count for r in results),
            wall=statistics.median(times),
        )
    n = len(conds)
    print(f"grid: {args.grid} Re x {len(args.eps)} eps = {n} solves, start={cfg.initial_guess}",
          file=out)
    print(f"{'method':<10} {'static_cost':>14} {'cost/solve':>12} {'iterations':>10} "
          f"{'log_calls':>9} {'wall_median_s':>14}", file=out)
    for name, s in summary.items():
        print(f"{name:<10} {fmt(s['cost']):>14} {fmt(s['cost'] / n):>12} "
              f"{s['iterations']:>10d} {s['logs']:>9d} {fmt(s['wall']):>14}", file=out)
    same = all(a.iterations == b.iterations for a, b in
               zip(summary["one_log"]["results"], summary["reference"]["results"]))
    ratio = summary["one_log"]["cost"] / summary["reference"]["cost"]
    print(f"identical iteration counts: {'yes' if same else 'no'}", file=out)
    print(f"static cost ratio one_log/reference: {fmt(ratio)}", file=out)
    print("wall-clock figures are informational only", file=out)
    return EXIT_OK


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="colebrook-pade",
                     description="One-log-call Padé/Newton solver for the Colebrook equation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve one (Re, eps) pair")
    p.add_argument("--re", type=float, required=True, help="Reynolds number")
    p.add_argument("--eps", type=float, required=True, help="relative roughness")
    p.add_argument("--x0", type=float, help="explicit starting point (overrides --start)")
    p.add_argument("--method", choices=("one_log", "reference"), default="one_log")
    p.add_argument("--trace", action="store_true", help="print every iteration")
    p.add_argument("--json", action="store_true", help="emit the full result as JSON")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("example", help="replay a reference worked example (1 or 2)")
    p.add_argument("number", choices=sorted(WORKED_EXAMPLES))
    p.add_argument("--json", action="store_true")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_example, fprime="scaled")

    p = sub.add_parser("table1", help="Padé log10 error table as CSV")
    p.add_argument("--order", type=_order, default=PadeOrder.O23)
    p.add_argument("--zmin", type=float, default=0.6)
    p.add_argument("--zmax", type=float, default=1.6)
    p.add_argument("--step", type=float, default=0.05)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("sweep", help="solve over a log-spaced Re x eps grid, CSV out")
    p.add_argument("--re-min", type=float, default=4000.0)
    p.add_argument("--re-max", type=float, default=1e8)
    p.add_argument("--re-points", type=int, default=20)
    p.add_argument("--eps", type=_float_list, default=_float_list(DEFAULT_EPS),
                   help="comma-separated roughness values (default: %s)" % DEFAULT_EPS)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    _add_solver_flags(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bench", help="static cost and wall-clock, one_log vs reference")
    p.add_argument("--grid", type=int, default=20, help="number of Re points")
    p.add_argument("--repeats", type=int, default=5)
    p.add_argument("--eps", type=_float_list, default=_float_list(DEFAULT_EPS))
    _add_solver_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out, err)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except BrokenPipeError:
        # downstream closed early (e.g. piped into head); not an error
        if out is sys.stdout:
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
