"""The deformation recursion: successive solution components y_0..y_M for a
given convergence-control parameter c0, and their assembly into the order-M
approximation.

With the integral-form operator T[y] = y - g - K[f(y)] (K the kernel-weighted
integral) and initial guess y_0 = g, the components follow

    y_1 = -c0 * K[D_0],
    y_k = (1 + c0) * y_{k-1} - c0 * K[D_{k-1}],   k >= 2,

where D_{k-1} is coefficient k-1 of the nonlinearity composed with the
series built so far (computed pointwise by the jet module).  Since the
source term g carries the inhomogeneous boundary data and K maps onto
functions satisfying the homogeneous conditions, every partial sum satisfies
the boundary conditions regardless of c0 and M.

Trials with a bad c0 are expected to blow up: instead of aborting, the
recursion stops at the first non-finite component or at a 10x jump in
component norms and returns the finite prefix flagged as diverged, so the
parameter search can score it.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import JetDomainError, ValidationError
from .expr import NonlinearityRule
from .grid import (CollocationGrid, GridFunction, fredholm_operator, sup_norm)
from .jet import Jet, jet_compose
from .kernel import CoefficientPair, GreensKernel

__all__ = ["HomotopySeries", "run_recursion", "assemble", "component_norms"]


@dataclass
class HomotopySeries:
    """Ordered solution components y_0..y_M as grid functions, tagged with
    the c0 that generated them.  ``diverged`` marks trials cut short by the
    growth guard; ``components`` then holds the finite prefix."""

    c0: float
    order: int
    components: list[GridFunction] = field(repr=False)
    diverged: bool = False

    @property
    def achieved_order(self) -> int:
        return len(self.components) - 1


def run_recursion(kern: GreensKernel, grid: CollocationGrid,
                  f: NonlinearityRule, q: CoefficientPair,
                  c0: float, M: int, initial_guess=None) -> HomotopySeries:
    """Run the deformation recursion to order M at fixed c0.

    ``f`` must already be normalised so the integral equation reads
    y = g + K[f(., y)].  ``initial_guess`` overrides y_0 (a constant or node
    vector); the default y_0 = g is what makes every partial sum satisfy the
    boundary conditions exactly.
    """
    if c0 == 0.0:
        raise ValidationError("the convergence-control parameter must be nonzero")
    if M < 1:
        raise ValidationError("the series order M must be at least 1")

    A = fredholm_operator(kern, q, grid)
    x = grid.nodes
    n = grid.n_nodes
    g = np.broadcast_to(np.asarray(kern.g_fn(x), dtype=float), (n,)).copy()
    if initial_guess is None:
        y0 = g
    else:
        y0 = np.broadcast_to(np.asarray(initial_guess, dtype=float), (n,)).copy()

    values = [y0]
    diverged = False
    with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
        for k in range(1, M + 1):
            phi = Jet(values)
            try:
                composed = jet_compose(f, x, phi)
            except JetDomainError as exc:
                exc.order = k
                raise
            d_prev = composed.coefficient(k - 1, shape=(n,))
            integ = A @ d_prev
            if k == 1:
                yk = c0 * (values[0] - g - integ)
            else:
                yk = (1.0 + c0) * values[-1] - c0 * integ
            if not np.all(np.isfinite(yk)):
                # cut before the non-finite component; the prefix is usable
                diverged = True
                break
            values.append(yk)
            if k >= 2:
                prev = np.abs(values[-2]).max()
                if prev > 0.0 and np.abs(yk).max() > 10.0 * prev:
                    diverged = True
            if np.abs(yk).max() > 1e150:
                # keep going only while far from overflow; downstream
                # comparisons still want the full component list of wildly
                # growing but representable series
                break

    comps = [GridFunction(grid, v) for v in values]
    return HomotopySeries(c0=c0, order=M, components=comps, diverged=diverged)


def assemble(series: HomotopySeries) -> GridFunction:
    """Node-wise sum of the components, ascending order with compensated
    summation."""
    grid = series.components[0].grid
    total = np.zeros(grid.n_nodes)
    carry = np.zeros(grid.n_nodes)
    for comp in series.components:
        y = comp.values - carry
        t = total + y
        carry = (t - total) - y
        total = t
    return GridFunction(grid, total)


def component_norms(series: HomotopySeries) -> np.ndarray:
    """Sup-norm of each component, approximated by the node maximum plus a
    10x refined interpolation sample."""
    return np.array([sup_norm(c) for c in series.components])
