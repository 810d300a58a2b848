"""Post-solve verification: differential residuals at the reporting points,
the component-norm ratio test, the geometric truncation bound it implies,
the Lipschitz/kernel-mass contraction estimate, and error against a
registered exact solution.

Two residual notions coexist on purpose: the parameter search minimises the
integral-operator residual, while the report tabulates the differential
residual |(p phi')' + q f(x, phi)| that the benchmark tables quote.  For a
converged solve the two agree in order of magnitude at interior points.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .engine import HomotopySeries, assemble, component_norms
from .errors import InvalidDelta
from .grid import (CollocationGrid, GridFunction, differentiate, interpolate,
                   kernel_mass, sup_norm)
from .kernel import GreensKernel
from .optimizer import ResidualProfile, _residuals_at

__all__ = ["SolveReport", "differential_residual", "ratio_test",
           "truncation_bound", "lipschitz_check", "build_report",
           "REPORT_XS"]

REPORT_XS = tuple(np.round(np.arange(1, 10) * 0.1, 10))


@dataclass
class SolveReport:
    """Everything a solve produces, as plain data.

    ``delta_ratios`` has one entry per computed correction; ``k0``/``delta``
    and the truncation bound are present only when the ratios settle below 1.
    ``diverged`` is set when the recursion tripped its growth guard or the
    ratio test finds no convergent tail.
    """

    c0: float
    order: int
    phi: GridFunction
    profile: ResidualProfile | None
    delta_ratios: np.ndarray
    k0: int | None
    delta: float | None
    truncation_bound: float | None
    lipschitz_L: float
    kernel_mass_max: float
    contraction: bool
    lipschitz_range: tuple[float, float]
    xs: tuple[float, ...]
    phi_at_xs: np.ndarray
    diff_residual: np.ndarray
    integral_residual: np.ndarray
    abs_error: np.ndarray | None
    diverged: bool


def differential_residual(bvp, phi: GridFunction, xs) -> np.ndarray:
    """|(p phi')'(x) + q(x) f~(x, phi(x))| at interior points, with f~ the
    sign-normalised nonlinearity.

    The outer derivative is expanded as p'*phi' + p*phi'' with p and p' in
    closed form, and phi', phi'' from the spectral differentiation rule; this
    keeps full accuracy when p carries a fractional power (differencing the
    sampled product p*phi' would not).
    """
    xs = np.asarray(xs, dtype=float)
    if np.any(xs <= 0.0) or np.any(xs >= 1.0):
        raise ValueError("differential residuals are reported on (0, 1) only")
    coeffs = bvp.coeffs
    d1 = differentiate(phi)
    d2 = differentiate(d1)
    phi_x = interpolate(phi, xs)
    dphi = interpolate(d1, xs)
    ddphi = interpolate(d2, xs)
    f = bvp.normalized_rule()
    fvals = np.broadcast_to(np.asarray(f(xs, phi_x), dtype=float), xs.shape)
    return np.abs(coeffs.p_prime(xs) * dphi + coeffs.p(xs) * ddphi
                  + coeffs.q(xs) * fvals)


def ratio_test(series: HomotopySeries):
    """Successive component-norm ratios, the first index k0 after which all
    ratios stay below 1, and the max tail ratio delta.  (None, None) when no
    convergent tail exists."""
    norms = component_norms(series)
    ratios = np.empty(len(norms) - 1)
    for k in range(len(ratios)):
        lo, hi = norms[k], norms[k + 1]
        if lo == 0.0:
            ratios[k] = 0.0 if hi == 0.0 else np.inf
        else:
            ratios[k] = hi / lo
    k0 = None
    for k in range(len(ratios)):
        if np.all(ratios[k:] < 1.0):
            k0 = k
            break
    if k0 is None:
        return ratios, None, None
    tail = ratios[k0:]
    delta = float(tail.max()) if tail.size else 0.0
    return ratios, k0, delta


def truncation_bound(series: HomotopySeries, k0: int, delta: float) -> float:
    """Geometric tail bound on the truncation error:
    delta**(M - k0 + 1) / (1 - delta) * ||y_k0||."""
    if not 0.0 < delta < 1.0:
        raise InvalidDelta(f"the ratio bound must lie in (0, 1), got {delta}")
    norms = component_norms(series)
    M = series.achieved_order
    return float(delta ** (M - k0 + 1) / (1.0 - delta) * norms[k0])


def lipschitz_check(bvp, kern: GreensKernel, grid: CollocationGrid,
                    y_range: tuple[float, float], n_y: int = 101):
    """Contraction estimate: L = max |f_y| over the grid times a y-sample of
    the given range (from the symbolic derivative of the expression tree),
    M = max_x int |G q| ds, and the boolean L*M < 1."""
    fy = bvp.normalized_rule().derivative_y()
    ys = np.linspace(y_range[0], y_range[1], n_y)
    vals = np.abs(np.asarray(fy(grid.nodes[None, :], ys[:, None]), dtype=float))
    L = float(vals.max()) if vals.size else 0.0
    mass = sup_norm(kernel_mass(kern, bvp.coeffs, grid))
    return L, mass, bool(L * mass < 1.0)


def build_report(bvp, kern: GreensKernel, grid: CollocationGrid,
                 series: HomotopySeries, profile: ResidualProfile | None = None,
                 xs=REPORT_XS, exact=None) -> SolveReport:
    """Assemble the full post-solve report at the given reporting points."""
    xs = tuple(float(v) for v in xs)
    xs_arr = np.asarray(xs)
    phi = assemble(series)
    ratios, k0, delta = ratio_test(series)
    bound = None
    if delta is not None and 0.0 < delta < 1.0:
        bound = truncation_bound(series, k0, delta)

    span = phi.values.max() - phi.values.min()
    pad = 0.1 * max(span, 1e-3)
    y_range = (float(phi.values.min() - pad), float(phi.values.max() + pad))
    L, mass, contraction = lipschitz_check(bvp, kern, grid, y_range)

    f = bvp.normalized_rule()
    phi_at = interpolate(phi, xs_arr)
    diff_res = differential_residual(bvp, phi, xs_arr)
    int_res = np.abs(_residuals_at(kern, grid, f, bvp.coeffs, phi, xs_arr))
    abs_err = None
    if exact is not None:
        abs_err = np.abs(phi_at - np.asarray(exact(xs_arr), dtype=float))

    return SolveReport(
        c0=series.c0,
        order=series.order,
        phi=phi,
        profile=profile,
        delta_ratios=ratios,
        k0=k0,
        delta=delta,
        truncation_bound=bound,
        lipschitz_L=L,
        kernel_mass_max=mass,
        contraction=contraction,
        lipschitz_range=y_range,
        xs=xs,
        phi_at_xs=phi_at,
        diff_residual=diff_res,
        integral_residual=int_res,
        abs_error=abs_err,
        diverged=series.diverged or k0 is None,
    )
