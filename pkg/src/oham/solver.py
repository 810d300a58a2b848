"""High-level driver tying the modules together: build the kernel and grid
for a problem, pick or accept a convergence-control parameter, run the
recursion, and return the full report."""
from __future__ import annotations

import os
from dataclasses import dataclass, field

from .diagnostics import REPORT_XS, SolveReport, build_report
from .engine import HomotopySeries, run_recursion
from .errors import ValidationError
from .grid import CollocationGrid
from .kernel import build_kernel
from .optimizer import ResidualProfile, optimize_c0
from .problems import BenchmarkProblem, SingularBVP

__all__ = ["SolveOptions", "solve", "worker_count"]


def worker_count() -> int:
    """Parallelism cap from the OHAM_THREADS environment variable (results
    are identical for any value; this only bounds concurrency)."""
    raw = os.environ.get("OHAM_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


@dataclass
class SolveOptions:
    order: int = 10
    n_nodes: int = 64
    quad_order: int = 40
    c0: float | str = "auto"          # "auto" or a fixed nonzero value
    bracket: tuple[float, float] = (-2.0, -0.05)
    n_samples: int = 20
    xs: tuple[float, ...] = REPORT_XS

    def __post_init__(self):
        if self.order < 1:
            raise ValidationError("order must be at least 1")
        if isinstance(self.c0, str):
            if self.c0 != "auto":
                raise ValidationError(f"c0 must be 'auto' or a number, got {self.c0!r}")
        elif float(self.c0) == 0.0:
            raise ValidationError("a fixed c0 must be nonzero")


def solve(problem: BenchmarkProblem | SingularBVP,
          options: SolveOptions | None = None,
          grid: CollocationGrid | None = None
          ) -> tuple[SolveReport, HomotopySeries]:
    """Solve a benchmark or user problem and return (report, series)."""
    options = options or SolveOptions()
    if isinstance(problem, BenchmarkProblem):
        bvp, exact = problem.bvp, problem.exact_solution
    else:
        bvp, exact = problem, None

    if grid is None:
        grid = CollocationGrid(options.n_nodes, options.quad_order)
    kern = build_kernel(bvp.coeffs, bvp.bc, grid=grid)
    f = bvp.normalized_rule()
    q = bvp.coeffs

    profile: ResidualProfile | None = None
    if options.c0 == "auto":
        profile = optimize_c0(kern, grid, f, q, options.order,
                              bracket=options.bracket, n=options.n_samples,
                              max_workers=worker_count())
        c0 = profile.optimum
    else:
        c0 = float(options.c0)

    series = run_recursion(kern, grid, f, q, c0, options.order)
    report = build_report(bvp, kern, grid, series, profile=profile,
                          xs=options.xs, exact=exact)
    return report, series
