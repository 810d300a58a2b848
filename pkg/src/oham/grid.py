"""Collocation grid, barycentric interpolation/differentiation, and the
singularity-aware quadrature behind every integral of the form
int_0^1 G(x,s) q(s) w(s) ds.

Nodes are Chebyshev-Gauss-Lobatto points mapped to [0,1], which gives
spectral interpolation for the smooth solutions of the benchmark class and
includes both endpoints for the boundary-condition checks.  The integral
operator applied to node samples is linear in those samples, so it is
assembled once per (kernel, q, grid) as a dense matrix and reused by every
recursion step and every convergence-parameter trial.

Quadrature layout per evaluation node x_i (the kernel is continuous but not
differentiable across s = x_i, so the s-integral is always split there):

* the panel touching s = 0 carries the integrand's full endpoint power
  s**gamma -- the q weight plus, for the Dirichlet-Robin family, the
  kernel's own h(s) ~ s**(1-a) factor.  Non-integer gamma is absorbed into
  a Gauss-Jacobi rule; integer gamma >= 0 keeps plain Gauss-Legendre with
  the power folded into the integrand (exact either way for polynomial
  data);
* the remaining panels use Gauss-Legendre on subpanels graded geometrically
  away from the origin, since the kernel and coefficients are analytic on
  (0,1] but have a branch point at 0;
* the x = 0 node of the Neumann-Robin family integrates H(s) itself: for
  pure power-law p the kernel splits exactly into two weighted endpoint
  rules (or a log-graded composite when p_exponent = 1).
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.special import roots_jacobi

from .errors import DomainError, NonIntegrableReciprocal, QuadratureDivergence, ValidationError
from .kernel import BCFamily, CoefficientPair, GreensKernel

__all__ = ["CollocationGrid", "GridFunction", "interpolate", "differentiate",
           "fredholm_apply", "fredholm_operator", "kernel_mass",
           "build_h_numeric", "sup_norm"]

_GRADE_RATIO = 10.0


def _bary_weights_for(nodes: np.ndarray) -> np.ndarray:
    """Barycentric weights for an arbitrary strictly increasing node set,
    computed in log magnitude to avoid overflow."""
    d = nodes[:, None] - nodes[None, :]
    np.fill_diagonal(d, 1.0)
    signs = np.prod(np.sign(d), axis=1)
    logs = np.sum(np.log(np.abs(d)), axis=1)
    logw = -(logs - logs.min())
    w = signs * np.exp(logw - logw.max())
    return w / np.abs(w).max()


def _bary_eval(nodes, weights, values, x):
    x = np.atleast_1d(np.asarray(x, dtype=float))
    d = x[:, None] - nodes[None, :]
    hit_i, hit_j = np.nonzero(d == 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        c = weights[None, :] / d
        out = (c @ values) / c.sum(axis=1)
    if hit_i.size:
        out[hit_i] = values[hit_j]
    return out


class CollocationGrid:
    """Chebyshev-Gauss-Lobatto nodes on [0,1] with barycentric weights, a
    dense first-derivative rule, and the per-panel quadrature order."""

    def __init__(self, n_nodes: int = 64, quad_order: int = 40):
        if n_nodes < 8:
            raise ValidationError("n_nodes must be at least 8")
        if quad_order < 2:
            raise ValidationError("quad_order must be at least 2")
        self.n_nodes = int(n_nodes)
        self.quad_order = int(quad_order)
        k = np.arange(self.n_nodes)
        self.nodes = (1.0 - np.cos(np.pi * k / (self.n_nodes - 1))) / 2.0
        self.nodes[0] = 0.0
        self.nodes[-1] = 1.0
        sgn = (-1.0) ** k
        scale = np.ones(self.n_nodes)
        scale[0] = scale[-1] = 0.5
        self.bary_weights = sgn * scale
        self.diff_rule = self._build_diff_rule()
        self._refined = None

    def _build_diff_rule(self) -> np.ndarray:
        x = self.nodes
        w = self.bary_weights
        d = x[:, None] - x[None, :]
        np.fill_diagonal(d, 1.0)
        D = (w[None, :] / w[:, None]) / d
        np.fill_diagonal(D, 0.0)
        np.fill_diagonal(D, -D.sum(axis=1))
        return D

    def interp_matrix(self, pts) -> np.ndarray:
        """Dense map from node values to values at ``pts`` (barycentric)."""
        pts = np.atleast_1d(np.asarray(pts, dtype=float))
        d = pts[:, None] - self.nodes[None, :]
        hit_i, hit_j = np.nonzero(d == 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            c = self.bary_weights[None, :] / d
            c = c / c.sum(axis=1, keepdims=True)
        if hit_i.size:
            c[hit_i, :] = 0.0
            c[hit_i, hit_j] = 1.0
        return c

    def refined_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        """Evaluation matrix on a 10x oversampled uniform point set, used for
        sup-norm estimates."""
        if self._refined is None:
            pts = np.linspace(0.0, 1.0, 10 * self.n_nodes + 1)
            self._refined = (pts, self.interp_matrix(pts))
        return self._refined


class GridFunction:
    """Node samples of a function on a collocation grid."""

    __slots__ = ("grid", "values")

    def __init__(self, grid: CollocationGrid, values):
        values = np.asarray(values, dtype=float)
        if values.shape != (grid.n_nodes,):
            raise ValidationError(
                f"expected {grid.n_nodes} node values, got shape {values.shape}")
        self.grid = grid
        self.values = values

    def __call__(self, x):
        return interpolate(self, x)


def interpolate(f: GridFunction, x):
    """Barycentric interpolation of ``f`` at x in [0,1]; exact at nodes."""
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0.0) or np.any(x_arr > 1.0):
        raise DomainError("interpolation point outside [0, 1]")
    out = f.grid.interp_matrix(x_arr) @ f.values
    return float(out[0]) if np.ndim(x) == 0 else out


def differentiate(f: GridFunction) -> GridFunction:
    """Node values of the derivative of the interpolant."""
    return GridFunction(f.grid, f.grid.diff_rule @ f.values)


def sup_norm(f: GridFunction) -> float:
    """Max of |f| over the nodes and a 10x refined interpolation sample."""
    _, R = f.grid.refined_matrix()
    return float(max(np.abs(f.values).max(), np.abs(R @ f.values).max()))


# -- quadrature rules ---------------------------------------------------------

@lru_cache(maxsize=32)
def _leg_rule(order: int):
    return np.polynomial.legendre.leggauss(order)


@lru_cache(maxsize=256)
def _jacobi_rule(order: int, gamma: float):
    return roots_jacobi(order, 0.0, gamma)


def _legendre_panel(lo: float, hi: float, order: int):
    x, w = _leg_rule(order)
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def _graded_panels(lo: float, hi: float, order: int, ratio: float = _GRADE_RATIO):
    """Composite Gauss-Legendre on [lo, hi], lo > 0, with subpanels graded
    geometrically away from the origin so integrands analytic on (0, inf)
    keep spectral accuracy however close lo sits to 0."""
    if lo <= 0.0:
        raise ValueError("graded panels need lo > 0")
    breaks = [lo]
    while breaks[-1] * ratio < hi:
        breaks.append(breaks[-1] * ratio)
    breaks.append(hi)
    pts, wts = [], []
    for a, b in zip(breaks[:-1], breaks[1:]):
        p, w = _legendre_panel(a, b, order)
        pts.append(p)
        wts.append(w)
    return np.concatenate(pts), np.concatenate(wts)


def _origin_panel(hi: float, gamma: float, order: int):
    """Nodes and weights integrating F over [0, hi] where F ~ s**gamma *
    (smooth).  The returned weights are folded so the caller evaluates the
    full integrand F directly: for non-integer gamma they are Gauss-Jacobi
    weights times s**(-gamma)."""
    if gamma <= -1.0 + 1e-12:
        raise QuadratureDivergence(
            f"endpoint weight exponent {gamma} makes the integral diverge")
    r = round(gamma)
    if abs(gamma - r) < 1e-12 and r >= 0:
        return _legendre_panel(0.0, hi, order)
    x, w = _jacobi_rule(order, gamma)
    pts = hi * (x + 1.0) / 2.0
    wts = w * (hi / 2.0) ** (gamma + 1.0) * pts ** (-gamma)
    return pts, wts


# -- the Fredholm operator ----------------------------------------------------

def _row_quadrature(kern: GreensKernel, q: CoefficientPair,
                    grid: CollocationGrid, x: float):
    """Quadrature points and weights (with the G*q factor folded in) for the
    integral int_0^1 G(x, s) q(s) (.) ds at one evaluation node."""
    order = grid.quad_order
    a = kern.coeffs.p_exponent
    b = q.q_exponent
    fam = kern.bc.family

    pieces = []
    if fam is BCFamily.DIRICHLET_ROBIN:
        if x == 0.0:
            return np.empty(0), np.empty(0)   # G(0, s) = 0 identically
        pts, w = _origin_panel(x, b + 1.0 - a, order)
        pieces.append((pts, w * kern.eval_G(x, pts) * q.q(pts)))
        pts, w = _graded_panels(x, 1.0, order)
        pieces.append((pts, w * kern.eval_G(x, pts) * q.q(pts)))
    else:
        c_beta = (kern.bc.beta / kern.bc.alpha) * kern.hp1
        if x > 0.0:
            pts, w = _origin_panel(x, b, order)
            pieces.append((pts, w * kern.eval_G(x, pts) * q.q(pts)))
            pts, w = _graded_panels(x, 1.0, order)
            pieces.append((pts, w * kern.eval_G(x, pts) * q.q(pts)))
        elif kern.pure_power_p and a != 1.0:
            # G(0,s) = [1/(1-a) + c_beta] - s**(1-a)/(1-a): two exact rules
            pts, w = _origin_panel(1.0, b, order)
            pieces.append((pts, w * (1.0 / (1.0 - a) + c_beta) * q.q(pts)))
            pts, w = _origin_panel(1.0, b + 1.0 - a, order)
            pieces.append((pts, w * (-1.0 / (1.0 - a)) * pts ** (1.0 - a) * q.q(pts)))
        else:
            # logarithmic (p = x) or tabulated primitive: graded composite
            # with a weighted innermost panel
            depth = int(np.clip(np.ceil(16.0 / (b + 1.0)), 6, 280))
            eps = 0.1 ** depth
            if kern.pure_power_p:
                H = lambda s: -np.log(s)
            else:
                H = kern.H_fn
            pts, w = _origin_panel(eps, b, order)
            pieces.append((pts, w * (H(pts) + c_beta) * q.q(pts)))
            pts, w = _graded_panels(eps, 1.0, order, ratio=10.0)
            pieces.append((pts, w * (H(pts) + c_beta) * q.q(pts)))
    all_pts = np.concatenate([p for p, _ in pieces])
    all_wts = np.concatenate([w for _, w in pieces])
    return all_pts, all_wts


@lru_cache(maxsize=32)
def fredholm_operator(kern: GreensKernel, q: CoefficientPair,
                      grid: CollocationGrid) -> np.ndarray:
    """Dense matrix A with (A @ w)[i] = int_0^1 G(x_i,s) q(s) wtilde(s) ds,
    wtilde the interpolant of the node samples w.  Assembled once and cached."""
    n = grid.n_nodes
    A = np.zeros((n, n))
    for i, x in enumerate(grid.nodes):
        pts, kw = _row_quadrature(kern, q, grid, float(x))
        if pts.size:
            A[i, :] = kw @ grid.interp_matrix(pts)
    A.setflags(write=False)
    return A


def fredholm_apply(kern: GreensKernel, q: CoefficientPair,
                   w: GridFunction) -> GridFunction:
    """Node values of x -> int_0^1 G(x,s) q(s) wtilde(s) ds."""
    A = fredholm_operator(kern, q, w.grid)
    return GridFunction(w.grid, A @ w.values)


@lru_cache(maxsize=64)
def evaluation_operator(kern: GreensKernel, q: CoefficientPair,
                        grid: CollocationGrid, xs: tuple) -> np.ndarray:
    """Like :func:`fredholm_operator` but with rows at arbitrary evaluation
    points instead of the grid nodes.

    Used by the residual computations: the kernel integral inherits the
    h(x)-type kink of the Dirichlet-Robin family at the origin, so its node
    samples must not be re-interpolated; evaluating the quadrature directly
    at each sample point keeps the operator residual at quadrature accuracy.
    """
    m = len(xs)
    B = np.zeros((m, grid.n_nodes))
    for i, x in enumerate(xs):
        pts, kw = _row_quadrature(kern, q, grid, float(x))
        if pts.size:
            B[i, :] = kw @ grid.interp_matrix(pts)
    B.setflags(write=False)
    return B


def kernel_mass(kern: GreensKernel, q: CoefficientPair,
                grid: CollocationGrid) -> GridFunction:
    """Node values of x -> int_0^1 |G(x,s) q(s)| ds.

    The absolute value is applied at the quadrature points, which is exact
    when G*q does not change sign (true for the whole benchmark class) and a
    conservative estimate otherwise.
    """
    vals = np.zeros(grid.n_nodes)
    for i, x in enumerate(grid.nodes):
        _, kw = _row_quadrature(kern, q, grid, float(x))
        vals[i] = np.abs(kw).sum()
    return GridFunction(grid, vals)


def build_h_numeric(p: CoefficientPair, grid: CollocationGrid) -> GridFunction:
    """Node samples of h(x) = int_0^x ds/p(s), with the s**(-p_exponent)
    endpoint weight handled by the weighted rule."""
    a = p.p_exponent
    if a >= 1.0:
        raise NonIntegrableReciprocal(
            f"1/p is not integrable on (0,1] for p_exponent={a}")
    vals = np.zeros(grid.n_nodes)
    for i, x in enumerate(grid.nodes):
        if x == 0.0:
            continue
        pts, w = _origin_panel(float(x), -a, grid.quad_order)
        vals[i] = w @ (1.0 / p.p(pts))
    return GridFunction(grid, vals)
