import numpy as np
import pytest

from oham.errors import ParseError
from oham.expr import (Add, Const, Div, Exp, Mul, NonlinearityRule, Pow, Sub,
                       VarX, VarY, parse_expression)


def test_parse_basic_arithmetic():
    e = parse_expression("2*x + y - 1")
    assert e.eval(0.5, 3.0) == pytest.approx(3.0)


def test_parse_with_parameters():
    e = parse_expression("a*x**b", {"a": 2.0, "b": 3.0})
    assert e.eval(2.0) == pytest.approx(16.0)


def test_parse_functions():
    e = parse_expression("exp(-y) + log(x)")
    assert e.eval(1.0, 0.0) == pytest.approx(1.0)


def test_parse_structural_equality():
    assert parse_expression("y*y + 1") == parse_expression("y*y + 1")
    assert parse_expression("x + y") != parse_expression("y + x")


def test_parse_unknown_symbol():
    with pytest.raises(ParseError, match="unknown symbol"):
        parse_expression("foo * y")


def test_parse_bad_syntax_has_position():
    with pytest.raises(ParseError) as exc:
        parse_expression("y +* 2")
    assert exc.value.line is not None


def test_parse_rejects_nonconstant_exponent():
    with pytest.raises(ParseError, match="constant"):
        parse_expression("x**y")


def test_parse_rejects_calls_outside_grammar():
    with pytest.raises(ParseError):
        parse_expression("sin(y)")


def test_derivative_y_product_and_chain():
    # d/dy [y * exp(2y)] = exp(2y) (1 + 2y)
    rule = NonlinearityRule.parse("y*exp(2*y)")
    fy = rule.derivative_y()
    ys = np.linspace(-1.0, 1.0, 7)
    expect = np.exp(2 * ys) * (1 + 2 * ys)
    assert np.allclose(fy(0.0, ys), expect, rtol=1e-14)


def test_derivative_x_of_power():
    e = parse_expression("x**1.5")
    dx = e.diff("x")
    assert dx.eval(4.0) == pytest.approx(1.5 * 4.0 ** 0.5)


def test_derivative_quotient():
    # d/dy [y/(y+k)] = k/(y+k)^2
    k = 0.03119
    fy = NonlinearityRule.parse("y/(y+k)", {"k": k}).derivative_y()
    for y in (0.0, 0.5, 1.0):
        assert fy(0.0, y) == pytest.approx(k / (y + k) ** 2, rel=1e-13)


def test_negated():
    rule = NonlinearityRule.parse("y*y")
    assert rule.negated()(0.0, 3.0) == pytest.approx(-9.0)


def test_eval_broadcasts():
    e = parse_expression("x*y")
    x = np.array([[1.0], [2.0]])
    y = np.array([3.0, 4.0])
    assert e.eval(x, y).shape == (2, 2)
