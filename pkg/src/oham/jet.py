"""Truncated power-series arithmetic in the homotopy embedding parameter.

A ``Jet`` holds the coefficients of a series y0 + y1*r + ... + yM*r**M at one
grid node (scalar coefficients) or at all nodes simultaneously (vector
coefficients, which is how the recursion engine uses it).  Composing a
nonlinearity with such a jet propagates the coefficients through the
classical elementary-series recurrences: Cauchy products for multiplication
and the first-order recurrences for div, exp, log and real powers.
Coefficient k of the composed jet is exactly the k-th homotopy-derivative
term of the nonlinearity, which coincides with the k-th Adomian polynomial.

``adomian_oracle`` recomputes the same quantity by a completely different
route (symbolic differentiation in a scalar homotopy parameter via sympy)
and exists only to cross-check ``jet_compose`` in the test suite.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .errors import JetDomainError
from .expr import (Add, Const, Div, Exp, Log, Mul, Neg, NonlinearityRule,
                   Pow, Sub, VarX, VarY)

__all__ = ["Jet", "jet_lift", "jet_compose", "adomian_oracle",
           "adomian_polynomial_values"]


class Jet:
    """Coefficients of a truncated series, index 0..order.

    ``coeffs`` is a list of numpy values; entries may be scalars or arrays of
    node values, and the two kinds broadcast freely against each other.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        self.coeffs = [np.asarray(c, dtype=float) for c in coeffs]

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def constant(cls, value, order: int) -> "Jet":
        return cls([value] + [0.0] * order)

    def coefficient(self, k: int, shape=None):
        """Coefficient k, optionally broadcast to a node-vector shape."""
        c = self.coeffs[k]
        if shape is not None and c.shape != shape:
            c = np.broadcast_to(c, shape).copy()
        return c

    def __repr__(self):
        return f"Jet({[np.asarray(c).tolist() for c in self.coeffs]})"


def jet_lift(values) -> Jet:
    """Pack component values y0..yM at one node (or node vectors) into a jet."""
    return Jet(list(values))


def _jadd(a: Jet, b: Jet) -> Jet:
    return Jet([x + y for x, y in zip(a.coeffs, b.coeffs)])


def _jsub(a: Jet, b: Jet) -> Jet:
    return Jet([x - y for x, y in zip(a.coeffs, b.coeffs)])


def _jneg(a: Jet) -> Jet:
    return Jet([-x for x in a.coeffs])


def _jmul(a: Jet, b: Jet) -> Jet:
    K = a.order
    out = []
    for k in range(K + 1):
        s = a.coeffs[0] * b.coeffs[k]
        for j in range(1, k + 1):
            s = s + a.coeffs[j] * b.coeffs[k - j]
        out.append(s)
    return Jet(out)


def _bad_nodes(mask):
    m = np.atleast_1d(mask)
    return np.flatnonzero(m).tolist()


def _jdiv(a: Jet, b: Jet) -> Jet:
    b0 = b.coeffs[0]
    if np.any(b0 == 0.0):
        raise JetDomainError("division by a series with zero leading coefficient",
                             nodes=_bad_nodes(b0 == 0.0))
    K = a.order
    out = [a.coeffs[0] / b0]
    for k in range(1, K + 1):
        s = a.coeffs[k]
        for j in range(k):
            s = s - out[j] * b.coeffs[k - j]
        out.append(s / b0)
    return Jet(out)


def _jexp(a: Jet) -> Jet:
    K = a.order
    out = [np.exp(a.coeffs[0])]
    for k in range(1, K + 1):
        s = a.coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            s = s + j * a.coeffs[j] * out[k - j]
        out.append(s / k)
    return Jet(out)


def _jlog(a: Jet) -> Jet:
    a0 = a.coeffs[0]
    if np.any(a0 <= 0.0):
        raise JetDomainError("log of a series with non-positive leading coefficient",
                             nodes=_bad_nodes(a0 <= 0.0))
    K = a.order
    out = [np.log(a0)]
    for k in range(1, K + 1):
        s = k * a.coeffs[k]
        for j in range(1, k):
            s = s - j * out[j] * a.coeffs[k - j]
        out.append(s / (k * a0))
    return Jet(out)


def _jpow_int(a: Jet, n: int) -> Jet:
    # exact repeated Cauchy products; valid for any base values
    if n == 0:
        return Jet.constant(1.0, a.order)
    result = a
    for _ in range(n - 1):
        result = _jmul(result, a)
    return result


def _jpow(a: Jet, e: float) -> Jet:
    if float(e).is_integer() and 0 <= e <= 64:
        return _jpow_int(a, int(e))
    if float(e).is_integer() and -64 <= e < 0:
        return _jdiv(Jet.constant(1.0, a.order), _jpow_int(a, int(-e)))
    a0 = a.coeffs[0]
    if np.any(a0 <= 0.0):
        raise JetDomainError(
            f"power with real exponent {e} needs a strictly positive leading "
            "coefficient", nodes=_bad_nodes(a0 <= 0.0))
    K = a.order
    out = [np.power(a0, e)]
    for k in range(1, K + 1):
        s = (e * 1 - (k - 1)) * a.coeffs[1] * out[k - 1]
        for j in range(2, k + 1):
            s = s + (e * j - (k - j)) * a.coeffs[j] * out[k - j]
        out.append(s / (k * a0))
    return Jet(out)


def jet_compose(rule: NonlinearityRule, x, phi: Jet) -> Jet:
    """Series of f(x, phi) truncated at phi's order.

    Coefficient k of the result is the k-th homotopy-derivative term of the
    nonlinearity evaluated on the components packed into ``phi``.
    """
    order = phi.order

    def walk(node):
        if isinstance(node, Const):
            return Jet.constant(node.value, order)
        if isinstance(node, VarX):
            return Jet.constant(x, order)
        if isinstance(node, VarY):
            return phi
        if isinstance(node, Add):
            return _jadd(walk(node.left), walk(node.right))
        if isinstance(node, Sub):
            return _jsub(walk(node.left), walk(node.right))
        if isinstance(node, Mul):
            return _jmul(walk(node.left), walk(node.right))
        if isinstance(node, Div):
            return _jdiv(walk(node.left), walk(node.right))
        if isinstance(node, Pow):
            return _jpow(walk(node.base), node.exponent)
        if isinstance(node, Exp):
            return _jexp(walk(node.arg))
        if isinstance(node, Log):
            return _jlog(walk(node.arg))
        if isinstance(node, Neg):
            return _jneg(walk(node.arg))
        raise TypeError(f"unknown expression node {type(node).__name__}")

    return walk(rule.expr)


@lru_cache(maxsize=256)
def _adomian_fn(rule: NonlinearityRule, k: int):
    """Lambdified k-th Adomian polynomial A_k(x, y0..yk).

    Built by substituting the polynomial sum(yj * lam**j) for y, taking the
    k-th symbolic derivative in lam, and evaluating at lam = 0.  Shares no
    logic with the series recurrences above.
    """
    import sympy as sp

    lam = sp.Symbol("_lam")
    xs = sp.Symbol("_x")
    ys = [sp.Symbol(f"_y{j}") for j in range(k + 1)]
    poly = sum(yj * lam ** j for j, yj in enumerate(ys))
    f = rule.expr.to_sympy(xs, poly)
    ak = sp.diff(f, lam, k) / sp.factorial(k)
    ak = ak.subs(lam, 0)
    return sp.lambdify([xs, *ys], ak, modules="numpy")


def adomian_polynomial_values(rule: NonlinearityRule, k: int, x, components):
    """Vectorised A_k over node arrays; ``components`` is a sequence of at
    least k+1 coefficient arrays."""
    if len(components) < k + 1:
        raise ValueError(f"A_{k} needs {k + 1} components, got {len(components)}")
    fn = _adomian_fn(rule, k)
    out = fn(np.asarray(x, dtype=float), *[np.asarray(c, dtype=float)
                                           for c in components[:k + 1]])
    return np.asarray(out, dtype=float)


def adomian_oracle(rule: NonlinearityRule, x: float, components, k: int) -> float:
    """The k-th Adomian polynomial of f at one point, by symbolic
    differentiation.  Test oracle for ``jet_compose``; not used by the
    solver itself."""
    vals = adomian_polynomial_values(rule, k, float(x),
                                     [float(c) for c in components[:k + 1]])
    return float(vals)
