"""Selection of the convergence-control parameter by minimising the discrete
averaged squared residual of the integral-form operator.

The objective E_M(c0) is the mean of squared operator residuals of the
order-M approximation over n uniform interior sample points x_j = j/(n+1).
Interior points are used because the endpoint samples are degenerate under
Dirichlet data (the residual vanishes there identically).  The search is a
deterministic 41-point coarse scan over the bracket followed by
golden-section refinement inside the winning scan interval; trials whose
series blow up score +inf so the scan can traverse divergence regions.
"""
from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .engine import HomotopySeries, assemble, run_recursion
from .errors import DomainError, NoFiniteSample, ValidationError
from .expr import NonlinearityRule
from .grid import (CollocationGrid, GridFunction, evaluation_operator,
                   fredholm_operator)
from .kernel import CoefficientPair, GreensKernel

__all__ = ["ResidualProfile", "integral_residual", "discrete_E", "optimize_c0"]

_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass
class ResidualProfile:
    """Audit trail of a parameter search: every (c0, E) pair evaluated, the
    bracket searched, and the winner."""

    samples: list[tuple[float, float]]
    bracket: tuple[float, float]
    optimum: float
    E_at_optimum: float


def _residuals_at(kern: GreensKernel, grid: CollocationGrid,
                  f: NonlinearityRule, q: CoefficientPair,
                  phi: GridFunction, xs: np.ndarray) -> np.ndarray:
    """Operator residual T[phi](x) = phi(x) - g(x) - K[f(., phi)](x) at the
    sample points, with f sampled at the nodes and the kernel integral
    evaluated by direct quadrature at each sample point (the integral's node
    samples carry the kernel's endpoint kink and must not be
    re-interpolated)."""
    fvals = np.broadcast_to(
        np.asarray(f(grid.nodes, phi.values), dtype=float), (grid.n_nodes,))
    B = evaluation_operator(kern, q, grid, tuple(float(v) for v in xs))
    P = grid.interp_matrix(xs)
    g_xs = np.broadcast_to(np.asarray(kern.g_fn(xs), dtype=float), (len(xs),))
    return P @ phi.values - g_xs - B @ fvals


def integral_residual(kern: GreensKernel, grid: CollocationGrid,
                      f: NonlinearityRule, q: CoefficientPair,
                      phi: GridFunction, x: float) -> float:
    if not 0.0 <= x <= 1.0:
        raise DomainError("residual sample point outside [0, 1]")
    return float(_residuals_at(kern, grid, f, q, phi, np.array([float(x)]))[0])


def discrete_E(kern: GreensKernel, grid: CollocationGrid,
               f: NonlinearityRule, q: CoefficientPair,
               series_factory, c0: float, n: int = 20) -> float:
    """Mean squared operator residual over n uniform interior points.
    Diverged or non-finite trials return +inf."""
    if n < 2:
        raise ValidationError("the residual sample count must be at least 2")
    if c0 == 0.0:
        raise ValidationError("the convergence-control parameter must be nonzero")
    series: HomotopySeries = series_factory(c0)
    if series.diverged:
        return math.inf
    phi = assemble(series)
    if not np.all(np.isfinite(phi.values)):
        return math.inf
    xs = np.arange(1, n + 1) / (n + 1.0)
    r = _residuals_at(kern, grid, f, q, phi, xs)
    if not np.all(np.isfinite(r)):
        return math.inf
    return float(np.mean(r * r))


def optimize_c0(kern: GreensKernel, grid: CollocationGrid,
                f: NonlinearityRule, q: CoefficientPair, M: int,
                bracket: tuple[float, float] = (-2.0, -0.05),
                n: int = 20, n_scan: int = 41, tol: float = 1e-7,
                max_workers: int = 1) -> ResidualProfile:
    """Coarse scan of ``n_scan`` equispaced trial values over the bracket,
    then golden-section refinement around the best scan point to a bracket
    width of ``tol``.  Deterministic: results do not depend on worker count.
    """
    lo, hi = float(bracket[0]), float(bracket[1])
    if not lo < hi:
        raise ValidationError("bracket must satisfy lo < hi")
    if lo <= 0.0 <= hi:
        raise ValidationError("the bracket must not contain 0")

    def factory(c0):
        return run_recursion(kern, grid, f, q, c0, M)

    def objective(c0):
        return discrete_E(kern, grid, f, q, factory, c0, n=n)

    cs = np.linspace(lo, hi, n_scan)
    if max_workers > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            Es = list(pool.map(objective, cs))
    else:
        Es = [objective(c) for c in cs]
    samples = list(zip(cs.tolist(), Es))

    if not any(math.isfinite(E) for E in Es):
        profile = ResidualProfile(samples=samples, bracket=(lo, hi),
                                  optimum=math.nan, E_at_optimum=math.inf)
        raise NoFiniteSample(
            "every trial value of the convergence-control parameter diverged",
            profile=profile)

    best = int(np.argmin(Es))
    a = cs[max(best - 1, 0)]
    b = cs[min(best + 1, n_scan - 1)]

    # golden-section refinement, confined to the winning scan interval
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = objective(c), objective(d)
    samples.append((float(c), fc))
    samples.append((float(d), fd))
    while (b - a) > tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = objective(c)
            samples.append((float(c), fc))
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = objective(d)
            samples.append((float(d), fd))

    opt_c0, opt_E = min(samples, key=lambda ce: (ce[1], ce[0]))
    return ResidualProfile(samples=samples, bracket=(lo, hi),
                           optimum=float(opt_c0), E_at_optimum=float(opt_E))
