"""Source term g(x) and Green's kernel G(x,s) for both boundary families.

The differential problem -(p(x) y')' = q(x) f(x, y) on (0,1) is inverted
analytically.  With Dirichlet data at 0 and Robin data at 1 the kernel is
built from the reciprocal primitive h(x) = int_0^x ds/p(s); with a Neumann
condition at 0 it is built from the complementary primitive
H(s) = int_s^1 dx/p(x), which stays finite for s > 0 even when h itself
diverges at the origin (p_exponent >= 1).  Both closed forms are used
whenever p is a pure power law; otherwise the primitives are tabulated at
the collocation nodes by weighted quadrature and interpolated.
"""
from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (DomainError, NonIntegrableReciprocal, QuadratureDivergence,
                     ValidationError, ValidationWarning, ZeroAlpha, ZeroMu)
from .expr import Const, Expr, parse_expression

__all__ = ["BCFamily", "BoundaryConditions", "CoefficientPair", "GreensKernel",
           "build_kernel", "eval_G", "eval_g"]

_POSITIVITY_PROBE = np.linspace(0.0, 1.0, 65)[1:]


class BCFamily(enum.Enum):
    DIRICHLET_ROBIN = "dirichlet-robin"
    NEUMANN_ROBIN = "neumann-robin"


@dataclass(frozen=True)
class BoundaryConditions:
    """y(0) = delta1 (Dirichlet-Robin) or p y' -> 0 at 0 (Neumann-Robin),
    together with alpha*y(1) + beta*y'(1) = gamma."""

    family: BCFamily
    alpha: float
    beta: float
    gamma: float
    delta1: float | None = None

    def __post_init__(self):
        if self.family is BCFamily.DIRICHLET_ROBIN and self.delta1 is None:
            raise ValidationError("dirichlet-robin conditions need delta1")


def _as_smooth(factor) -> Expr | None:
    if factor is None:
        return None
    if isinstance(factor, Expr):
        return None if factor == Const(1.0) else factor
    if isinstance(factor, str):
        expr = parse_expression(factor)
        return None if expr == Const(1.0) else expr
    if isinstance(factor, (int, float)):
        return None if float(factor) == 1.0 else Const(float(factor))
    raise ValidationError(
        "smooth coefficient factors must be expressions in x (or None); "
        "opaque callables cannot be differentiated for the residual checks")


@dataclass(frozen=True)
class CoefficientPair:
    """p(x) = x**p_exponent * p_smooth(x), q(x) = x**q_exponent * q_smooth(x).

    Splitting off the power-law part lets the quadrature treat the endpoint
    singularity exactly; the smooth factors default to 1 and must be strictly
    positive on (0,1].
    """

    p_exponent: float
    q_exponent: float
    p_smooth: Expr | None = None
    q_smooth: Expr | None = None

    def __post_init__(self):
        object.__setattr__(self, "p_smooth", _as_smooth(self.p_smooth))
        object.__setattr__(self, "q_smooth", _as_smooth(self.q_smooth))
        if self.q_exponent <= -1.0:
            raise QuadratureDivergence(
                f"q_exponent must exceed -1 for q to be integrable, "
                f"got {self.q_exponent}")

    @property
    def pure_power_p(self) -> bool:
        return self.p_smooth is None

    def p(self, x):
        v = np.power(x, self.p_exponent) if self.p_exponent != 0.0 else np.ones_like(np.asarray(x, float))
        if self.p_smooth is not None:
            v = v * self.p_smooth.eval(x)
        return v

    def p_prime(self, x):
        """dp/dx in closed form (needed by the differential residual)."""
        x = np.asarray(x, dtype=float)
        a = self.p_exponent
        term = a * np.power(x, a - 1.0) if a != 0.0 else np.zeros_like(x)
        if self.p_smooth is None:
            return term
        ps = self.p_smooth.eval(x)
        dps = self.p_smooth.diff("x").eval(x)
        return term * ps + np.power(x, a) * dps

    def q(self, s):
        with np.errstate(divide="ignore"):
            v = np.power(s, self.q_exponent) if self.q_exponent != 0.0 else np.ones_like(np.asarray(s, float))
        if self.q_smooth is not None:
            v = v * self.q_smooth.eval(s)
        return v

    def q_smooth_eval(self, s):
        return self.q_smooth.eval(s) if self.q_smooth is not None else np.ones_like(np.asarray(s, float))


def _check_positive(name: str, expr: Expr | None):
    if expr is None:
        return
    vals = np.asarray(expr.eval(_POSITIVITY_PROBE), dtype=float)
    if not np.all(np.isfinite(vals)) or np.any(vals <= 0.0):
        raise ValidationError(f"{name} must be strictly positive on (0,1]")


class GreensKernel:
    """Immutable pair (g, G) plus the primitives they are built from.

    Attributes mirror what downstream quadrature needs: ``mu`` and ``h_fn``
    for the Dirichlet-Robin family, ``H_fn`` for Neumann-Robin, ``hp1`` =
    1/p(1), and the source term ``g_fn``.  Instances are safe for concurrent
    read; construction happens once in :func:`build_kernel`.
    """

    def __init__(self, coeffs: CoefficientPair, bc: BoundaryConditions, grid=None):
        self.coeffs = coeffs
        self.bc = bc
        a = coeffs.p_exponent
        fam = bc.family

        _check_positive("p_smooth", coeffs.p_smooth)
        _check_positive("q_smooth", coeffs.q_smooth)

        p1 = float(coeffs.p(1.0))
        self.hp1 = 1.0 / p1
        self.pure_power_p = coeffs.pure_power_p
        self._h_nodes = None
        self._H_interp = None

        if fam is BCFamily.DIRICHLET_ROBIN:
            if not (0.0 <= a < 1.0):
                raise NonIntegrableReciprocal(
                    f"1/p is not integrable on (0,1] for p_exponent={a}; "
                    "dirichlet-robin problems need p_exponent in [0,1)")
            if self.pure_power_p:
                self.h_fn = lambda x: np.power(x, 1.0 - a) / (1.0 - a)
            else:
                if grid is None:
                    raise ValidationError(
                        "a collocation grid is required to tabulate h(x) when "
                        "p has a smooth factor")
                from .grid import build_h_numeric, interpolate
                hf = build_h_numeric(coeffs, grid)
                self._h_nodes = hf
                self.h_fn = lambda x: interpolate(hf, x)
            self.H_fn = None
            h1 = float(self.h_fn(1.0))
            mu = bc.alpha * h1 + bc.beta * self.hp1
            if abs(mu) < 1e-14 * max(abs(bc.alpha * h1), abs(bc.beta * self.hp1), 1.0):
                raise ZeroMu("alpha*h(1) + beta*h'(1) vanishes; no kernel exists")
            self.mu = mu
            self.h1 = h1
            slope = (bc.gamma - bc.delta1 * bc.alpha) / mu
            self.g_fn = lambda x: bc.delta1 + slope * self.h_fn(x)
            self._g_slope = slope
        else:
            if bc.alpha == 0.0:
                raise ZeroAlpha("neumann-robin conditions need alpha != 0")
            if a < 0.0:
                raise ValidationError("p_exponent must be >= 0")
            self.mu = None
            self.h_fn = None
            if self.pure_power_p:
                if a == 1.0:
                    self.H_fn = lambda s: -np.log(s)
                else:
                    self.H_fn = lambda s: (1.0 - np.power(s, 1.0 - a)) / (1.0 - a)
            else:
                if grid is None:
                    raise ValidationError(
                        "a collocation grid is required to tabulate H(s) when "
                        "p has a smooth factor")
                self._build_H_numeric(grid)
            gval = bc.gamma / bc.alpha
            self.g_fn = lambda x: np.full_like(np.asarray(x, dtype=float), gval)
            self._g_const = gval

        self._warn_double_integrability()

    # -- numeric complementary primitive (smooth-factor p only) -------------

    def _build_H_numeric(self, grid):
        from .grid import _graded_panels
        coeffs = self.coeffs
        a = coeffs.p_exponent

        def recip_p(s):
            return 1.0 / coeffs.p(s)

        def integral(lo, hi):
            if hi - lo <= 0.0:
                return 0.0
            pts, wts = _graded_panels(lo, hi, grid.quad_order)
            return float(wts @ recip_p(pts))

        pos_nodes = grid.nodes[1:]
        vals = np.empty_like(pos_nodes)
        acc = 0.0
        prev = 1.0
        for i in range(len(pos_nodes) - 1, -1, -1):
            acc += integral(pos_nodes[i], prev)
            prev = pos_nodes[i]
            vals[i] = acc
        from .grid import _bary_weights_for, _bary_eval
        w = _bary_weights_for(pos_nodes)
        first = pos_nodes[0]
        H_first = vals[0]

        def H(s):
            s_arr = np.asarray(s, dtype=float)
            out = np.empty_like(s_arr)
            small = s_arr < first
            if np.any(~small):
                out[~small] = _bary_eval(pos_nodes, w, vals, s_arr[~small])
            if np.any(small):
                sm = np.atleast_1d(s_arr[small])
                out[small] = [H_first + integral(float(sv), float(first)) for sv in sm]
            return out if out.shape else float(out)

        self.H_fn = H

    def _warn_double_integrability(self):
        # admissibility of the iterated integral of (1/p) against q; for a
        # violated pair the kernel still builds but quadrature may diverge
        a, b = self.coeffs.p_exponent, self.coeffs.q_exponent
        if self.bc.family is BCFamily.NEUMANN_ROBIN and b + 1.0 - a <= -1.0:
            warnings.warn(
                "int_0^1 (1/p) int_0^x q is not finite for "
                f"p_exponent={a}, q_exponent={b}; the problem lies outside "
                "the guaranteed class and quadrature may fail",
                ValidationWarning, stacklevel=3)

    # -- evaluation ----------------------------------------------------------

    def eval_g(self, x):
        x = np.asarray(x, dtype=float)
        _check_domain(x, "x")
        return self.g_fn(x)

    def g_prime(self, x):
        """dg/dx in closed form, for boundary-condition identities."""
        if self.bc.family is BCFamily.NEUMANN_ROBIN:
            return np.zeros_like(np.asarray(x, dtype=float))
        return self._g_slope / self.coeffs.p(x)

    def eval_G(self, x, s):
        x = np.asarray(x, dtype=float)
        s = np.asarray(s, dtype=float)
        _check_domain(x, "x")
        _check_domain(s, "s")
        lo = np.minimum(x, s)
        hi = np.maximum(x, s)
        if self.bc.family is BCFamily.DIRICHLET_ROBIN:
            val = self.h_fn(lo) * (1.0 - self.bc.alpha * self.h_fn(hi) / self.mu)
        else:
            with np.errstate(divide="ignore"):
                val = self.H_fn(hi) + (self.bc.beta / self.bc.alpha) * self.hp1
            if not np.all(np.isfinite(np.asarray(val))):
                raise DomainError("G(x,s) is unbounded at s = x = 0 for this kernel")
        return val if np.ndim(val) else float(val)

    def dG_dx_at_1(self, s):
        """Partial derivative of G in x at x = 1, closed form; used by the
        homogeneous boundary-condition identities."""
        s = np.asarray(s, dtype=float)
        if self.bc.family is BCFamily.DIRICHLET_ROBIN:
            return -self.h_fn(s) * self.bc.alpha * self.hp1 / self.mu
        return np.full_like(s, -self.hp1)


def _check_domain(v, name):
    if np.any(v < 0.0) or np.any(v > 1.0):
        raise DomainError(f"{name} must lie in [0, 1]")


def build_kernel(p_q: CoefficientPair, bc: BoundaryConditions, grid=None) -> GreensKernel:
    """Construct the Green's kernel for the given coefficients and boundary
    family.  ``grid`` is only needed when p carries a smooth factor, in which
    case the primitives are tabulated with the grid's quadrature."""
    return GreensKernel(p_q, bc, grid=grid)


def eval_G(k: GreensKernel, x, s):
    return k.eval_G(x, s)


def eval_g(k: GreensKernel, x):
    return k.eval_g(x)
