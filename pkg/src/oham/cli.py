"""Command-line interface.

Subcommands:

* ``solve`` -- solve a registered benchmark or a problem config file, with
  automatic, fixed, or swept convergence-control parameter, and write the
  report as CSV, markdown, or JSON lines;
* ``table`` -- rerun the configuration behind one of the stored reference
  tables and print computed vs reference values with pass/fail verdicts;
* ``sweep`` -- emit (c0, E_M(c0)) pairs over a range for external plotting.

Exit codes: 0 success, 1 reference-table mismatch, 2 validation error,
3 solver divergence (no finite optimum).  Diagnostics go to stderr; stdout
carries only data.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .engine import assemble, run_recursion
from .errors import NoFiniteSample, OhamError, ParseError, ValidationError
from .grid import CollocationGrid
from .kernel import build_kernel
from .optimizer import discrete_E
from .problems import REFERENCE_TABLES, load_problem, registry_get
from .solver import SolveOptions, solve, worker_count
from .diagnostics import ratio_test, differential_residual

SCHEMA = "oham-report v1"

_PARAM_FLAGS = {
    "alpha": "--alpha", "beta": "--beta", "n": "--n", "sigma": "--sigma",
    "k": "--k", "delta": "--delta", "eps": "--eps",
    "a2": "--a2", "b2": "--b2", "g2": "--g2",
}


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "1" if v else "0"
    return f"{float(v):.16e}"


class ReportWriter:
    """Rows of (kind, key, x, value) rendered as csv, markdown, or jsonl.

    Numbers are printed in scientific notation with 17 significant digits so
    identical runs produce byte-identical output.
    """

    def __init__(self, fmt: str, stream):
        self.fmt = fmt
        self.stream = stream
        self.rows: list[tuple[str, str, object, object]] = []

    def scalar(self, key, value):
        self.rows.append(("scalar", key, None, value))

    def point(self, key, x, value):
        self.rows.append(("point", key, x, value))

    def series(self, key, index, value):
        self.rows.append(("series", key, float(index), value))

    def flush(self):
        w = self.stream.write
        if self.fmt == "csv":
            w(f"# {SCHEMA}\n")
            w("kind,key,x,value\n")
            for kind, key, x, v in self.rows:
                w(f"{kind},{key},{_fmt(x)},{_fmt(v)}\n")
        elif self.fmt == "markdown":
            w(f"# {SCHEMA}\n\n")
            w("| kind | key | x | value |\n|---|---|---|---|\n")
            for kind, key, x, v in self.rows:
                w(f"| {kind} | {key} | {_fmt(x)} | {_fmt(v)} |\n")
        else:  # jsonl
            for kind, key, x, v in self.rows:
                rec = {"schema": SCHEMA, "kind": kind, "key": key,
                       "x": _fmt(x), "value": _fmt(v)}
                w(json.dumps(rec, sort_keys=True) + "\n")


def _build_problem(args):
    if args.file:
        with open(args.file, "r", encoding="utf-8") as fh:
            return load_problem(fh.read())
    if not args.problem:
        raise ValidationError("either --problem or --file is required")
    params = {name: getattr(args, name) for name in _PARAM_FLAGS
              if getattr(args, name, None) is not None}
    return registry_get(args.problem, params)


def _parse_c0(raw: str):
    if raw == "auto":
        return "auto"
    if raw.startswith("fixed:"):
        raw = raw[len("fixed:"):]
    try:
        return float(raw)
    except ValueError:
        raise ValidationError(f"--c0 must be 'auto', 'fixed:VALUE' or a "
                              f"number, got {raw!r}") from None


def _open_output(path):
    if path in (None, "-"):
        return sys.stdout, False
    return open(path, "w", encoding="utf-8"), True


def cmd_solve(args) -> int:
    problem = _build_problem(args)
    xs = tuple(float(t) for t in args.xs.split(",")) if args.xs else None
    options = SolveOptions(order=args.order, n_nodes=args.grid,
                           quad_order=args.quad_order, c0=_parse_c0(args.c0),
                           bracket=(args.bracket[0], args.bracket[1]),
                           n_samples=args.nsamples,
                           **({"xs": xs} if xs else {}))
    report, _series = solve(problem, options)

    out = ReportWriter(args.format, None)
    out.scalar("c0", report.c0)
    if report.profile is not None:
        out.scalar("E_at_c0", report.profile.E_at_optimum)
    out.scalar("order", report.order)
    out.scalar("diverged", report.diverged)
    if report.delta is not None:
        out.scalar("k0", report.k0)
        out.scalar("delta", report.delta)
    if report.truncation_bound is not None:
        out.scalar("truncation_bound", report.truncation_bound)
    out.scalar("lipschitz_L", report.lipschitz_L)
    out.scalar("kernel_mass", report.kernel_mass_max)
    out.scalar("contraction", report.contraction)
    for x, v in zip(report.xs, report.phi_at_xs):
        out.point("phi", x, v)
    for x, v in zip(report.xs, report.diff_residual):
        out.point("diff_residual", x, v)
    for x, v in zip(report.xs, report.integral_residual):
        out.point("integral_residual", x, v)
    if report.abs_error is not None:
        for x, v in zip(report.xs, report.abs_error):
            out.point("abs_error", x, v)
    for i, r in enumerate(report.delta_ratios):
        out.series("delta_ratio", i, r)

    stream, close = _open_output(args.output)
    try:
        out.stream = stream
        out.flush()
    finally:
        if close:
            stream.close()
    return 0


def cmd_sweep(args) -> int:
    problem = _build_problem(args)
    bvp = problem.bvp if hasattr(problem, "bvp") else problem
    if args.count < 2:
        raise ValidationError("sweep needs count >= 2")
    if not args.lo < args.hi:
        raise ValidationError("sweep needs lo < hi")
    grid = CollocationGrid(args.grid, args.quad_order)
    kern = build_kernel(bvp.coeffs, bvp.bc, grid=grid)
    f, q = bvp.normalized_rule(), bvp.coeffs

    def factory(c0):
        return run_recursion(kern, grid, f, q, c0, args.order)

    cs = np.linspace(args.lo, args.hi, args.count)
    Es = [discrete_E(kern, grid, f, q, factory, float(c), n=args.nsamples)
          for c in cs]
    finite = [E if np.isfinite(E) else np.inf for E in Es]
    imin = int(np.argmin(finite))

    stream, close = _open_output(args.output)
    try:
        w = stream.write
        if args.format == "jsonl":
            for i, (c, E) in enumerate(zip(cs, Es)):
                w(json.dumps({"schema": SCHEMA, "c0": _fmt(c), "E": _fmt(E),
                              "minimizer": int(i == imin)}, sort_keys=True) + "\n")
        elif args.format == "markdown":
            w(f"# {SCHEMA}\n\n| c0 | E | minimizer |\n|---|---|---|\n")
            for i, (c, E) in enumerate(zip(cs, Es)):
                w(f"| {_fmt(c)} | {_fmt(E)} | {int(i == imin)} |\n")
        else:
            w(f"# {SCHEMA}\n")
            w("c0,E,minimizer\n")
            for i, (c, E) in enumerate(zip(cs, Es)):
                w(f"{_fmt(c)},{_fmt(E)},{int(i == imin)}\n")
    finally:
        if close:
            stream.close()
    return 0


def _table_case(tbl, eps=None):
    params = dict(tbl.parameters)
    if eps is not None:
        params["eps"] = eps
    return registry_get(tbl.problem_id, params)


def _run_case(problem, order, c0, grid_size, quad_order):
    options = SolveOptions(order=order, n_nodes=grid_size,
                           quad_order=quad_order, c0=c0)
    return solve(problem, options)


def cmd_table(args) -> int:
    tbl = REFERENCE_TABLES.get(args.table_id)
    if tbl is None:
        raise ValidationError(f"no reference table {args.table_id}; "
                              f"available: {sorted(REFERENCE_TABLES)}")
    xs = tuple(row[0] for row in tbl.rows)
    rows = np.asarray(tbl.rows)
    err = sys.stderr.write
    out = sys.stdout.write
    failures = []

    def check(name, ok):
        if not ok:
            failures.append(name)
        return "PASS" if ok else "FAIL"

    out(f"reference table {tbl.number}: {tbl.problem_id} {tbl.parameters}\n")
    if tbl.kind == "multi-eps":
        for col, eps in enumerate(tbl.eps_cases):
            problem = _table_case(tbl, eps=eps)
            report, _ = _run_case(problem, 10, "auto", args.grid, args.quad_order)
            adm_report, adm_series = _run_case(problem, 10, -1.0, args.grid,
                                               args.quad_order)
            ref_adm = rows[:, 1 + 2 * col]
            ref_oham = rows[:, 2 + 2 * col]
            out(f"\ncase eps={eps:g}  (c0 = {report.c0:.6f})\n")
            out(f"{'x':>4} {'resid(ADM)':>12} {'ref':>12} "
                f"{'resid(OHAM)':>12} {'ref':>12}\n")
            adm_res = adm_report.diff_residual
            for i, x in enumerate(xs):
                out(f"{x:>4.1f} {adm_res[i]:>12.3e} {ref_adm[i]:>12.4g} "
                    f"{report.diff_residual[i]:>12.3e} {ref_oham[i]:>12.3e}\n")
            v1 = check(f"eps={eps:g} oham residual <= {tbl.residual_tol:g}",
                       float(report.diff_residual.max()) <= tbl.residual_tol)
            v2 = check(f"eps={eps:g} adm residual > {tbl.adm_residual_floor:g}",
                       float(adm_res.max()) > tbl.adm_residual_floor)
            out(f"oham residual <= {tbl.residual_tol:g}: {v1}\n")
            out(f"adm residual exceeds {tbl.adm_residual_floor:g}: {v2}\n")
    else:
        problem = _table_case(tbl)
        report5, _ = _run_case(problem, 5, "auto", args.grid, args.quad_order)
        report10, _ = _run_case(problem, 10, "auto", args.grid, args.quad_order)
        adm10, adm_series = _run_case(problem, 10, -1.0, args.grid, args.quad_order)
        out(f"c0(order 5) = {report5.c0:.7f}   c0(order 10) = {report10.c0:.7f}\n")
        if tbl.kind == "error":
            comp5, comp10 = report5.abs_error, report10.abs_error
            adm_col = adm10.abs_error
            label = "abs error"
        else:
            comp5, comp10 = report5.diff_residual, report10.diff_residual
            adm_col = adm10.diff_residual
            label = "residual"
        out(f"{'x':>4} {label+'(5)':>13} {'ref':>10} {label+'(10)':>14} "
            f"{'ref':>10} {'phi10':>14} {'ref':>13} {'adm10':>12} {'ref':>10}\n")
        for i, x in enumerate(xs):
            out(f"{x:>4.1f} {comp5[i]:>13.3e} {rows[i,2]:>10.2e} "
                f"{comp10[i]:>14.3e} {rows[i,4]:>10.2e} "
                f"{report10.phi_at_xs[i]:>14.9f} {rows[i,6]:>13.9f} "
                f"{adm_col[i]:>12.3e} {rows[i,3]:>10.2e}\n")
        if tbl.error_tol is not None:
            v = check(f"abs error <= {tbl.error_tol:g}",
                      float(np.max(comp10)) <= tbl.error_tol)
            out(f"order-10 abs error <= {tbl.error_tol:g}: {v}\n")
        if tbl.residual_tol is not None:
            v = check(f"residual <= {tbl.residual_tol:g}",
                      float(np.max(comp10)) <= tbl.residual_tol)
            out(f"order-10 residual <= {tbl.residual_tol:g}: {v}\n")
        if tbl.solution_tol is not None:
            dev = float(np.max(np.abs(report10.phi_at_xs - rows[:, 6])))
            v = check(f"solution within {tbl.solution_tol:g}",
                      dev <= tbl.solution_tol)
            out(f"solution column within {tbl.solution_tol:g} "
                f"(max dev {dev:.2e}): {v}\n")
        if tbl.expect_adm_divergent:
            _, k0, _ = ratio_test(adm_series)
            v = check("adm run divergent", adm_series.diverged or k0 is None)
            out(f"adm run flagged divergent: {v}\n")
    if failures:
        err("failed checks: " + "; ".join(failures) + "\n")
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="oham",
        description="Solver for nonlinear doubly singular two-point boundary "
                    "value problems in Green's-function integral form, with "
                    "automatic convergence-control parameter selection.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, with_problem=True):
        if with_problem:
            p.add_argument("--problem", help="registered problem id (P1..P5)")
            p.add_argument("--file", help="path to an oham-problem v1 config")
            for name, flag in _PARAM_FLAGS.items():
                p.add_argument(flag, type=float, default=None,
                               help=f"problem parameter {name}")
        p.add_argument("--order", type=int, default=10, help="series order M")
        p.add_argument("--grid", type=int, default=64, help="collocation nodes")
        p.add_argument("--quad-order", dest="quad_order", type=int, default=40,
                       help="quadrature order per panel")
        p.add_argument("--nsamples", type=int, default=20,
                       help="residual sample count for the objective")
        p.add_argument("--format", choices=("csv", "markdown", "jsonl"),
                       default="csv")
        p.add_argument("--output", default=None, help="output path (default stdout)")

    ps = sub.add_parser("solve", help="solve one problem and report")
    add_common(ps)
    ps.add_argument("--c0", default="auto",
                    help="'auto', 'fixed:VALUE', or a number")
    ps.add_argument("--bracket", type=float, nargs=2, default=(-2.0, -0.05),
                    metavar=("LO", "HI"), help="search bracket for auto c0")
    ps.add_argument("--xs", default=None,
                    help="comma-separated reporting points in (0,1)")
    ps.set_defaults(func=cmd_solve)

    pt = sub.add_parser("table", help="reproduce a stored reference table")
    pt.add_argument("table_id", type=int, help="table number (1-9)")
    pt.add_argument("--grid", type=int, default=64)
    pt.add_argument("--quad-order", dest="quad_order", type=int, default=40)
    pt.set_defaults(func=cmd_table)

    pw = sub.add_parser("sweep", help="tabulate E_M(c0) over a range")
    add_common(pw)
    pw.add_argument("--lo", type=float, required=True)
    pw.add_argument("--hi", type=float, required=True)
    pw.add_argument("--count", type=int, required=True)
    pw.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NoFiniteSample as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (ParseError, ValidationError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OhamError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except OSError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


def main_entry():
    raise SystemExit(main())
