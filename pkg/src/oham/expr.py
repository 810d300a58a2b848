"""Expression trees for nonlinearities f(x, y) and spatial coefficient factors.

The grammar is intentionally small: add, subtract, multiply, divide, a power
with a constant real exponent, exp, log, the spatial variable ``x``, the
unknown ``y``, and numeric constants.  Trees evaluate numerically (numpy
broadcasting), differentiate symbolically with respect to either variable,
and convert to sympy expressions for the independent test oracles.
"""
from __future__ import annotations

import ast
from dataclasses import dataclass

import numpy as np

from .errors import ParseError

__all__ = [
    "Expr", "Const", "VarX", "VarY", "Add", "Sub", "Mul", "Div", "Pow",
    "Exp", "Log", "Neg", "NonlinearityRule", "parse_expression",
]


@dataclass(frozen=True)
class Expr:
    """Base node.  Subclasses are frozen dataclasses, so trees compare and
    hash structurally."""

    def eval(self, x, y=None):
        raise NotImplementedError

    def diff(self, var: str) -> "Expr":
        raise NotImplementedError

    def to_sympy(self, x_obj, y_obj):
        raise NotImplementedError

    def uses(self, var: str) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Const(Expr):
    value: float

    def eval(self, x, y=None):
        return self.value

    def diff(self, var):
        return Const(0.0)

    def to_sympy(self, x_obj, y_obj):
        import sympy as sp
        v = self.value
        if float(v).is_integer():
            return sp.Integer(int(v))
        return sp.Float(v)

    def uses(self, var):
        return False

    def __str__(self):
        return repr(self.value)


@dataclass(frozen=True)
class VarX(Expr):
    def eval(self, x, y=None):
        return x

    def diff(self, var):
        return Const(1.0) if var == "x" else Const(0.0)

    def to_sympy(self, x_obj, y_obj):
        return x_obj

    def uses(self, var):
        return var == "x"

    def __str__(self):
        return "x"


@dataclass(frozen=True)
class VarY(Expr):
    def eval(self, x, y=None):
        if y is None:
            raise ValueError("expression uses y but no y value was supplied")
        return y

    def diff(self, var):
        return Const(1.0) if var == "y" else Const(0.0)

    def to_sympy(self, x_obj, y_obj):
        return y_obj

    def uses(self, var):
        return var == "y"

    def __str__(self):
        return "y"


@dataclass(frozen=True)
class Add(Expr):
    left: Expr
    right: Expr

    def eval(self, x, y=None):
        return self.left.eval(x, y) + self.right.eval(x, y)

    def diff(self, var):
        return _add(self.left.diff(var), self.right.diff(var))

    def to_sympy(self, x_obj, y_obj):
        return self.left.to_sympy(x_obj, y_obj) + self.right.to_sympy(x_obj, y_obj)

    def uses(self, var):
        return self.left.uses(var) or self.right.uses(var)

    def __str__(self):
        return f"({self.left} + {self.right})"


@dataclass(frozen=True)
class Sub(Expr):
    left: Expr
    right: Expr

    def eval(self, x, y=None):
        return self.left.eval(x, y) - self.right.eval(x, y)

    def diff(self, var):
        return _sub(self.left.diff(var), self.right.diff(var))

    def to_sympy(self, x_obj, y_obj):
        return self.left.to_sympy(x_obj, y_obj) - self.right.to_sympy(x_obj, y_obj)

    def uses(self, var):
        return self.left.uses(var) or self.right.uses(var)

    def __str__(self):
        return f"({self.left} - {self.right})"


@dataclass(frozen=True)
class Mul(Expr):
    left: Expr
    right: Expr

    def eval(self, x, y=None):
        return self.left.eval(x, y) * self.right.eval(x, y)

    def diff(self, var):
        return _add(_mul(self.left.diff(var), self.right),
                    _mul(self.left, self.right.diff(var)))

    def to_sympy(self, x_obj, y_obj):
        return self.left.to_sympy(x_obj, y_obj) * self.right.to_sympy(x_obj, y_obj)

    def uses(self, var):
        return self.left.uses(var) or self.right.uses(var)

    def __str__(self):
        return f"({self.left} * {self.right})"


@dataclass(frozen=True)
class Div(Expr):
    left: Expr
    right: Expr

    def eval(self, x, y=None):
        return self.left.eval(x, y) / self.right.eval(x, y)

    def diff(self, var):
        # (u/v)' = u'/v - u v'/v^2
        u, v = self.left, self.right
        return _sub(_div(u.diff(var), v),
                    _div(_mul(u, v.diff(var)), _mul(v, v)))

    def to_sympy(self, x_obj, y_obj):
        return self.left.to_sympy(x_obj, y_obj) / self.right.to_sympy(x_obj, y_obj)

    def uses(self, var):
        return self.left.uses(var) or self.right.uses(var)

    def __str__(self):
        return f"({self.left} / {self.right})"


@dataclass(frozen=True)
class Pow(Expr):
    """base ** exponent with a constant real exponent."""
    base: Expr
    exponent: float

    def eval(self, x, y=None):
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.power(self.base.eval(x, y), self.exponent)

    def diff(self, var):
        e = self.exponent
        if e == 0.0:
            return Const(0.0)
        return _mul(Const(e), _mul(Pow(self.base, e - 1.0), self.base.diff(var)))

    def to_sympy(self, x_obj, y_obj):
        import sympy as sp
        e = self.exponent
        es = sp.Integer(int(e)) if float(e).is_integer() else sp.Float(e)
        return self.base.to_sympy(x_obj, y_obj) ** es

    def uses(self, var):
        return self.base.uses(var)

    def __str__(self):
        return f"({self.base} ** {self.exponent!r})"


@dataclass(frozen=True)
class Exp(Expr):
    arg: Expr

    def eval(self, x, y=None):
        with np.errstate(over="ignore"):
            return np.exp(self.arg.eval(x, y))

    def diff(self, var):
        return _mul(self, self.arg.diff(var))

    def to_sympy(self, x_obj, y_obj):
        import sympy as sp
        return sp.exp(self.arg.to_sympy(x_obj, y_obj))

    def uses(self, var):
        return self.arg.uses(var)

    def __str__(self):
        return f"exp({self.arg})"


@dataclass(frozen=True)
class Log(Expr):
    arg: Expr

    def eval(self, x, y=None):
        with np.errstate(invalid="ignore", divide="ignore"):
            return np.log(self.arg.eval(x, y))

    def diff(self, var):
        return _div(self.arg.diff(var), self.arg)

    def to_sympy(self, x_obj, y_obj):
        import sympy as sp
        return sp.log(self.arg.to_sympy(x_obj, y_obj))

    def uses(self, var):
        return self.arg.uses(var)

    def __str__(self):
        return f"log({self.arg})"


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr

    def eval(self, x, y=None):
        return -self.arg.eval(x, y)

    def diff(self, var):
        return _neg(self.arg.diff(var))

    def to_sympy(self, x_obj, y_obj):
        return -self.arg.to_sympy(x_obj, y_obj)

    def uses(self, var):
        return self.arg.uses(var)

    def __str__(self):
        return f"(-{self.arg})"


def _is_const(e: Expr, v: float) -> bool:
    return isinstance(e, Const) and e.value == v


def _add(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    return Add(a, b)


def _sub(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    return Sub(a, b)


def _mul(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    return Mul(a, b)


def _div(a: Expr, b: Expr) -> Expr:
    if _is_const(a, 0.0):
        return Const(0.0)
    if _is_const(b, 1.0):
        return a
    return Div(a, b)


def _neg(a: Expr) -> Expr:
    if isinstance(a, Const):
        return Const(-a.value)
    if isinstance(a, Neg):
        return a.arg
    return Neg(a)


@dataclass(frozen=True)
class NonlinearityRule:
    """A nonlinearity f(x, y) given as an expression tree.

    The tree supplies three things: pointwise evaluation, the partial
    derivative f_y for Lipschitz estimates (built symbolically, never by
    numeric differencing), and the series-composition walk used by the
    homotopy-derivative computation.
    """

    expr: Expr

    def __call__(self, x, y):
        return self.expr.eval(x, y)

    def derivative_y(self) -> "NonlinearityRule":
        return NonlinearityRule(self.expr.diff("y"))

    def negated(self) -> "NonlinearityRule":
        return NonlinearityRule(_neg(self.expr))

    def uses_y(self) -> bool:
        return self.expr.uses("y")

    @classmethod
    def parse(cls, text: str, params: dict | None = None) -> "NonlinearityRule":
        return cls(parse_expression(text, params))

    def __str__(self):
        return str(self.expr)


_FUNCTIONS = {"exp": Exp, "log": Log}


def parse_expression(text: str, params: dict | None = None) -> Expr:
    """Parse an expression string into a tree.

    ``params`` maps free names (other than x and y) to numeric constants,
    which are folded in at parse time.  Exponents of ``**`` must fold to a
    constant.  Anything outside the grammar raises ParseError with the
    source position.
    """
    params = params or {}
    try:
        root = ast.parse(text.strip(), mode="eval")
    except SyntaxError as exc:
        raise ParseError(f"invalid expression syntax: {exc.msg}",
                         line=exc.lineno, col=exc.offset) from None
    return _convert(root.body, params)


def _convert(node: ast.AST, params: dict) -> Expr:
    if isinstance(node, ast.Constant):
        if isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return Const(float(node.value))
        raise ParseError(f"unsupported literal {node.value!r}",
                         line=node.lineno, col=node.col_offset)
    if isinstance(node, ast.Name):
        if node.id == "x":
            return VarX()
        if node.id == "y":
            return VarY()
        if node.id in params:
            return Const(float(params[node.id]))
        raise ParseError(f"unknown symbol {node.id!r}",
                         line=node.lineno, col=node.col_offset)
    if isinstance(node, ast.UnaryOp):
        if isinstance(node.op, ast.USub):
            return _neg(_convert(node.operand, params))
        if isinstance(node.op, ast.UAdd):
            return _convert(node.operand, params)
        raise ParseError("unsupported unary operator",
                         line=node.lineno, col=node.col_offset)
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            base = _convert(node.left, params)
            exponent = _convert(node.right, params)
            if exponent.uses("x") or exponent.uses("y"):
                raise ParseError("exponent must be a constant",
                                 line=node.lineno, col=node.col_offset)
            return Pow(base, float(exponent.eval(0.0, 0.0)))
        left = _convert(node.left, params)
        right = _convert(node.right, params)
        if isinstance(node.op, ast.Add):
            return _add(left, right)
        if isinstance(node.op, ast.Sub):
            return _sub(left, right)
        if isinstance(node.op, ast.Mult):
            return _mul(left, right)
        if isinstance(node.op, ast.Div):
            return _div(left, right)
        raise ParseError("unsupported binary operator",
                         line=node.lineno, col=node.col_offset)
    if isinstance(node, ast.Call):
        if (isinstance(node.func, ast.Name) and node.func.id in _FUNCTIONS
                and len(node.args) == 1 and not node.keywords):
            return _FUNCTIONS[node.func.id](_convert(node.args[0], params))
        name = getattr(node.func, "id", "<expr>")
        raise ParseError(f"unsupported function call {name!r}",
                         line=node.lineno, col=node.col_offset)
    raise ParseError(f"unsupported syntax element {type(node).__name__}",
                     line=getattr(node, "lineno", None),
                     col=getattr(node, "col_offset", None))
