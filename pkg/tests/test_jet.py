import math

import numpy as np
import pytest

from oham.errors import JetDomainError
from oham.expr import (Add, Const, Div, Exp, Log, Mul, NonlinearityRule, Pow,
                       Sub, VarX, VarY)
from oham.jet import Jet, adomian_oracle, jet_compose, jet_lift


def test_lift_round_trip():
    v = [1.0, 0.0, 0.0]
    j = jet_lift(v)
    assert [float(c) for c in j.coeffs] == v
    assert j.order == 2


def test_lift_order_zero():
    j = jet_lift([7.5])
    assert j.order == 0 and float(j.coeffs[0]) == 7.5


def test_square_coefficients():
    rule = NonlinearityRule.parse("y*y")
    y0, y1 = 2.0, 3.0
    out = jet_compose(rule, 0.0, jet_lift([y0, y1]))
    assert float(out.coeffs[0]) == pytest.approx(y0 ** 2)
    assert float(out.coeffs[1]) == pytest.approx(2 * y0 * y1)


def test_exp_of_r():
    rule = NonlinearityRule.parse("exp(y)")
    out = jet_compose(rule, 0.0, jet_lift([0.0, 1.0, 0.0, 0.0, 0.0]))
    expect = [1.0, 1.0, 0.5, 1.0 / 6.0, 1.0 / 24.0]
    assert np.allclose([float(c) for c in out.coeffs], expect, atol=1e-15)


def test_quotient_first_order():
    k = 0.03119
    rule = NonlinearityRule.parse("y/(y+k)", {"k": k})
    out = jet_compose(rule, 0.0, jet_lift([1.0, 0.2]))
    assert float(out.coeffs[0]) == pytest.approx(1.0 / (1.0 + k), rel=1e-14)
    assert float(out.coeffs[1]) == pytest.approx(k * 0.2 / (1.0 + k) ** 2, rel=1e-13)


def test_fractional_power_series():
    rule = NonlinearityRule.parse("y**1.5")
    out = jet_compose(rule, 0.0, jet_lift([4.0, 1.0, 0.0]))
    # (4 + r)^1.5 = 8 + 3 r + (3/16) r^2 + ...
    assert float(out.coeffs[0]) == pytest.approx(8.0)
    assert float(out.coeffs[1]) == pytest.approx(1.5 * 2.0)
    assert float(out.coeffs[2]) == pytest.approx(0.5 * 1.5 * 0.5 * 4.0 ** -0.5)


def test_vector_coefficients_match_scalar():
    rule = NonlinearityRule.parse("exp(y)*x + y*y")
    xs = np.array([0.2, 0.7])
    comp0 = np.array([0.1, -0.3])
    comp1 = np.array([0.5, 0.25])
    out = jet_compose(rule, xs, Jet([comp0, comp1]))
    for i, x in enumerate(xs):
        scalar = jet_compose(rule, float(x), jet_lift([comp0[i], comp1[i]]))
        assert float(np.asarray(out.coeffs[1])[i]) == pytest.approx(
            float(scalar.coeffs[1]), rel=1e-14)


def test_domain_error_log_nonpositive_base():
    rule = NonlinearityRule.parse("log(y)")
    with pytest.raises(JetDomainError):
        jet_compose(rule, 0.0, jet_lift([-1.0, 1.0]))


def test_domain_error_division_by_zero_base():
    rule = NonlinearityRule.parse("1/y")
    with pytest.raises(JetDomainError):
        jet_compose(rule, 0.0, jet_lift([0.0, 1.0]))


def test_domain_error_fractional_power_negative_base():
    rule = NonlinearityRule.parse("y**0.5")
    with pytest.raises(JetDomainError) as exc:
        jet_compose(rule, 0.0, Jet([np.array([1.0, -2.0]), np.array([0.0, 0.0])]))
    assert exc.value.nodes == [1]


def test_integer_power_allows_any_base():
    rule = NonlinearityRule.parse("y**3")
    out = jet_compose(rule, 0.0, jet_lift([-2.0, 1.0]))
    assert float(out.coeffs[0]) == pytest.approx(-8.0)
    assert float(out.coeffs[1]) == pytest.approx(12.0)


def test_adomian_examples():
    rule = NonlinearityRule.parse("y*y")
    assert adomian_oracle(rule, 0.0, [2.0, 3.0], 1) == pytest.approx(12.0)
    rule = NonlinearityRule.parse("exp(y)")
    assert adomian_oracle(rule, 0.0, [0.0, 1.0, 1.0], 2) == pytest.approx(1.5)
    rule = NonlinearityRule.parse("x*exp(2*y) - y")
    assert adomian_oracle(rule, 0.3, [0.7], 0) == pytest.approx(
        0.3 * math.exp(1.4) - 0.7, rel=1e-13)


def _random_tree(rng, depth):
    """Random expression valid on y near [0.4, 1.6], x in (0, 1)."""
    if depth == 0:
        return rng.choice([VarY(), VarX(), Const(rng.uniform(0.3, 2.0))])
    op = rng.integers(0, 7)
    u = _random_tree(rng, depth - 1)
    v = _random_tree(rng, depth - 1)
    if op == 0:
        return Add(u, v)
    if op == 1:
        return Sub(u, v)
    if op == 2:
        return Mul(u, v)
    if op == 3:
        return Div(u, Add(Const(2.0), Mul(v, v)))
    if op == 4:
        return Exp(Mul(Const(0.3), u))
    if op == 5:
        return Log(Add(Const(2.0), Mul(u, u)))
    return Pow(Add(Const(2.0), Mul(u, u)), rng.uniform(-1.5, 1.7))


def test_compose_matches_adomian_oracle_on_random_trees():
    rng = np.random.default_rng(1234)
    for trial in range(30):
        rule = NonlinearityRule(_random_tree(rng, rng.integers(1, 4)))
        order = int(rng.integers(2, 9))
        comps = [rng.uniform(0.5, 1.5)] + list(rng.uniform(-0.5, 0.5, order))
        x = float(rng.uniform(0.05, 1.0))
        out = jet_compose(rule, x, jet_lift(comps))
        for k in range(order + 1):
            expect = adomian_oracle(rule, x, comps, k)
            got = float(out.coeffs[k])
            assert got == pytest.approx(expect, rel=1e-10, abs=1e-12), (
                f"trial {trial}, k={k}: {rule.expr}")


def test_polynomial_sum_identity_small_epsilon():
    # f evaluated on the truncated series at small eps matches the composed
    # polynomial up to O(eps^(M+1))
    rule = NonlinearityRule.parse("exp(y) + y*y/(2+y)")
    comps = [0.8, -0.4, 0.3, 0.2]
    M = len(comps) - 1
    out = jet_compose(rule, 0.0, jet_lift(comps))
    coeffs = [float(c) for c in out.coeffs]
    for eps in (1e-2, 1e-3):
        y_eps = sum(c * eps ** j for j, c in enumerate(comps))
        direct = rule(0.0, y_eps)
        poly = sum(c * eps ** k for k, c in enumerate(coeffs))
        assert abs(direct - poly) < 50.0 * eps ** (M + 1) + 1e-14


def test_linear_rule_acts_linearly_on_coefficients():
    rule = NonlinearityRule.parse("3*y + x")
    comps = [0.5, -1.0, 2.0, 0.25]
    out = jet_compose(rule, 0.4, jet_lift(comps))
    assert float(out.coeffs[0]) == pytest.approx(3 * comps[0] + 0.4)
    for k in range(1, 4):
        assert float(out.coeffs[k]) == pytest.approx(3 * comps[k])


@pytest.mark.parametrize("text,params", [
    ("beta*(beta*x**beta*exp(2*y) - exp(y)*(alpha+beta-1))",
     {"alpha": 0.5, "beta": 1.0}),
    ("sigma**2 * y**1.5", {"sigma": 1.0}),
    ("sigma**2 * y**2", {"sigma": 2.0}),
    ("delta*exp(-y)", {"delta": 1.0}),
    ("n*y/(y+k)", {"n": 0.76129, "k": 0.03119}),
    ("delta*exp(y/(1+eps*y))", {"delta": 1.0, "eps": 5.0}),
])
def test_benchmark_nonlinearities_compose(text, params):
    rule = NonlinearityRule.parse(text, params)
    comps = [1.0, 0.1, -0.05, 0.02]
    out = jet_compose(rule, 0.5, jet_lift(comps))
    assert all(np.isfinite(np.asarray(c)).all() for c in out.coeffs)
    assert float(out.coeffs[0]) == pytest.approx(rule(0.5, 1.0), rel=1e-13)
