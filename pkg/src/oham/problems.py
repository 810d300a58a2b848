"""Registry of the five benchmark problems plus a loader for user-defined
problems from a structured text configuration.

Each benchmark records its coefficients, boundary family, nonlinearity and
sign convention, the known exact solution when there is one, the reference
convergence-control parameters, and the reference tables (solution values
and residuals) that the ``table`` CLI subcommand and the regression suite
compare against.

Sign conventions: some statements are written as (p y')' = q f and some as
-(p y')' = q f.  The convention is recorded on the problem and the solver
consumes a normalised nonlinearity so the integral equation always reads
y = g + int G q f~.
"""
from __future__ import annotations

import configparser
import enum
import io
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (MissingParameter, NonIntegrableReciprocal, ParseError,
                     UnknownParameter, ValidationError, ValidationWarning)
from .expr import NonlinearityRule, parse_expression
from .kernel import BCFamily, BoundaryConditions, CoefficientPair

__all__ = ["SignConvention", "SingularBVP", "BenchmarkProblem", "ReferenceTable",
           "registry_get", "load_problem", "validate_bvp", "PROBLEM_IDS",
           "REFERENCE_TABLES", "CONFIG_HEADER"]

CONFIG_HEADER = "oham-problem v1"


class SignConvention(enum.Enum):
    MINUS_DIV = "minus-div"   # -(p y')' = q f
    PLUS_DIV = "plus-div"     # (p y')' = q f


@dataclass(frozen=True)
class SingularBVP:
    """A doubly singular two-point problem in divergence form."""

    coeffs: CoefficientPair
    bc: BoundaryConditions
    f: NonlinearityRule
    sign: SignConvention

    def normalized_rule(self) -> NonlinearityRule:
        """The nonlinearity f~ with the sign folded in, so that the problem
        is -(p y')' = q f~ and the integral equation is y = g + K[f~]."""
        if self.sign is SignConvention.MINUS_DIV:
            return self.f
        return self.f.negated()


@dataclass
class BenchmarkProblem:
    id: str
    parameters: dict[str, float]
    bvp: SingularBVP
    exact_solution: object | None = None
    reference_c0: dict[int, float] | None = None
    tables: tuple[int, ...] = ()


@dataclass
class ReferenceTable:
    """One reference table: row layout is (x, adm_col_5, oham_col_5,
    adm_col_10, oham_col_10, adm_solution_10, oham_solution_10) for the
    single-case kinds, and (x, adm_r10, oham_r10) per perturbation value for
    the multi-eps kind.  ``kind`` says whether the error columns are absolute
    errors against the exact solution or differential residuals."""

    number: int
    problem_id: str
    parameters: dict[str, float]
    kind: str                      # "error" | "residual" | "multi-eps"
    rows: tuple[tuple[float, ...], ...]
    eps_cases: tuple[float, ...] = ()
    solution_tol: float | None = None
    residual_tol: float | None = None
    error_tol: float | None = None
    expect_adm_divergent: bool = False
    adm_residual_floor: float | None = None


PROBLEM_IDS = ("P1", "P2", "P3", "P4", "P5")

_PROBLEM_SPECS = {
    # id: (required params, defaults)
    "P1": (("alpha", "beta"), {}),
    "P2": (("n", "sigma"), {}),
    "P3": ((), {"delta": 1.0, "a2": 1.0, "b2": 1.0, "g2": 0.0}),
    "P4": ((), {"n": 0.76129, "k": 0.03119}),
    "P5": (("alpha", "eps"), {"delta": 1.0}),
}

_REFERENCE_C0 = {
    ("P1", (("alpha", 0.5), ("beta", 1.0))): {5: -0.970001, 10: -0.970011},
    ("P2", (("n", 1.5), ("sigma", 1.0))): {5: -0.8929193, 10: -0.8712345},
    ("P2", (("n", 2.0), ("sigma", 1.5))): {5: -0.6890655, 10: -0.6666666},
    ("P2", (("n", 2.0), ("sigma", 2.0))): {5: -0.5723102, 10: -0.4809289},
    ("P3", (("a2", 1.0), ("b2", 1.0), ("delta", 1.0), ("g2", 0.0))): {5: -0.6842013, 10: -0.6666463},
    ("P3", (("a2", 2.0), ("b2", 1.0), ("delta", 1.0), ("g2", 0.0))): {5: -0.7759493, 10: -0.7701234},
    ("P4", (("k", 0.03119), ("n", 0.76129))): {5: -1.045949, 10: -1.010201},
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 5.0))): {10: -0.432512},
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 10.0))): {10: -0.381111},
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 15.0))): {10: -0.284943},
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 5.0))): {10: -0.608235},
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 10.0))): {10: -0.471209},
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 15.0))): {10: -0.381567},
}

_TABLE_MEMBERSHIP = {
    ("P1", (("alpha", 0.5), ("beta", 1.0))): (1,),
    ("P2", (("n", 1.5), ("sigma", 1.0))): (2,),
    ("P2", (("n", 2.0), ("sigma", 1.5))): (3,),
    ("P2", (("n", 2.0), ("sigma", 2.0))): (4,),
    ("P3", (("a2", 1.0), ("b2", 1.0), ("delta", 1.0), ("g2", 0.0))): (5,),
    ("P3", (("a2", 2.0), ("b2", 1.0), ("delta", 1.0), ("g2", 0.0))): (6,),
    ("P4", (("k", 0.03119), ("n", 0.76129))): (7,),
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 5.0))): (8,),
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 10.0))): (8,),
    ("P5", (("alpha", 1.0), ("delta", 1.0), ("eps", 15.0))): (8,),
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 5.0))): (9,),
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 10.0))): (9,),
    ("P5", (("alpha", 2.0), ("delta", 1.0), ("eps", 15.0))): (9,),
}


def _params_key(pid: str, params: dict) -> tuple:
    return (pid, tuple(sorted((k, float(v)) for k, v in params.items())))


def registry_get(problem_id: str, parameters: dict | None = None,
                 **kwargs) -> BenchmarkProblem:
    """Build a fully-specified benchmark problem.

    Raises UnknownParameter / MissingParameter for a bad parameter set; the
    returned object is a pure function of its inputs.
    """
    pid = problem_id.upper()
    if pid not in _PROBLEM_SPECS:
        raise ValidationError(f"unknown problem id {problem_id!r}; "
                              f"expected one of {', '.join(PROBLEM_IDS)}")
    required, defaults = _PROBLEM_SPECS[pid]
    supplied = dict(parameters or {})
    supplied.update(kwargs)
    allowed = set(required) | set(defaults)
    for name in supplied:
        if name not in allowed:
            raise UnknownParameter(f"{pid} does not take a parameter {name!r}")
    for name in required:
        if name not in supplied:
            raise MissingParameter(f"{pid} requires parameter {name!r}")
    params = dict(defaults)
    params.update({k: float(v) for k, v in supplied.items()})

    builder = {"P1": _build_p1, "P2": _build_p2, "P3": _build_p3,
               "P4": _build_p4, "P5": _build_p5}[pid]
    bvp, exact = builder(params)
    validate_bvp(bvp)
    key = _params_key(pid, params)
    return BenchmarkProblem(
        id=pid, parameters=params, bvp=bvp, exact_solution=exact,
        reference_c0=_REFERENCE_C0.get(key),
        tables=_TABLE_MEMBERSHIP.get(key, ()),
    )


def _build_p1(params):
    """Doubly singular problem with known closed-form solution:
    (x^alpha y')' = x^(alpha+beta-2) * beta*(beta*x^beta*e^(2y) - e^y*(alpha+beta-1)),
    y(0) = ln(1/4), y(1) = ln(1/5)."""
    alpha, beta = params["alpha"], params["beta"]
    if not 0.0 < alpha < 1.0:
        raise ValidationError("P1 needs 0 < alpha < 1")
    if beta <= 0.0:
        raise ValidationError("P1 needs beta > 0")
    coeffs = CoefficientPair(p_exponent=alpha, q_exponent=alpha + beta - 2.0)
    bc = BoundaryConditions(BCFamily.DIRICHLET_ROBIN, alpha=1.0, beta=0.0,
                            gamma=math.log(1.0 / 5.0), delta1=math.log(1.0 / 4.0))
    f = NonlinearityRule.parse(
        "beta*(beta*x**beta*exp(2*y) - exp(y)*(alpha+beta-1))",
        {"alpha": alpha, "beta": beta})
    bvp = SingularBVP(coeffs, bc, f, SignConvention.PLUS_DIV)

    def exact(x):
        return np.log(1.0 / (4.0 + np.power(x, beta)))

    return bvp, exact


def _build_p2(params):
    """Thermal explosion in a sphere: (x^2 y')' = sigma^2 x^2 y^n,
    y'(0) = 0, y(1) = 1."""
    n, sigma = params["n"], params["sigma"]
    coeffs = CoefficientPair(p_exponent=2.0, q_exponent=2.0)
    bc = BoundaryConditions(BCFamily.NEUMANN_ROBIN, alpha=1.0, beta=0.0, gamma=1.0)
    f = NonlinearityRule.parse("sigma**2 * y**n", {"n": n, "sigma": sigma})
    return SingularBVP(coeffs, bc, f, SignConvention.PLUS_DIV), None


def _build_p3(params):
    """Heat conduction in the human head: -(x^2 y')' = delta x^2 e^(-y),
    y'(0) = 0, a2*y(1) + b2*y'(1) = g2."""
    coeffs = CoefficientPair(p_exponent=2.0, q_exponent=2.0)
    bc = BoundaryConditions(BCFamily.NEUMANN_ROBIN, alpha=params["a2"],
                            beta=params["b2"], gamma=params["g2"])
    f = NonlinearityRule.parse("delta*exp(-y)", {"delta": params["delta"]})
    return SingularBVP(coeffs, bc, f, SignConvention.MINUS_DIV), None


def _build_p4(params):
    """Oxygen diffusion in a spherical cell: (x^2 y')' = n x^2 y/(y+k),
    y'(0) = 0, 5 y(1) + y'(1) = 5."""
    coeffs = CoefficientPair(p_exponent=2.0, q_exponent=2.0)
    bc = BoundaryConditions(BCFamily.NEUMANN_ROBIN, alpha=5.0, beta=1.0, gamma=5.0)
    f = NonlinearityRule.parse("n*y/(y+k)", {"n": params["n"], "k": params["k"]})
    return SingularBVP(coeffs, bc, f, SignConvention.PLUS_DIV), None


def _build_p5(params):
    """Perturbed Lane-Emden equation of the second kind:
    -(x^alpha y')' = delta x^alpha exp(y/(1+eps*y)),
    y'(0) = 0, 2 y(1) + y'(1) = 0."""
    alpha = params["alpha"]
    if alpha < 0.0:
        raise ValidationError("P5 needs alpha >= 0")
    coeffs = CoefficientPair(p_exponent=alpha, q_exponent=alpha)
    bc = BoundaryConditions(BCFamily.NEUMANN_ROBIN, alpha=2.0, beta=1.0, gamma=0.0)
    f = NonlinearityRule.parse("delta*exp(y/(1+eps*y))",
                               {"delta": params["delta"], "eps": params["eps"]})
    return SingularBVP(coeffs, bc, f, SignConvention.MINUS_DIV), None


def validate_bvp(bvp: SingularBVP) -> None:
    """Structural admissibility checks.

    Hard failures raise; combinations that merely fall outside the class with
    guaranteed behaviour emit a ValidationWarning.
    """
    a = bvp.coeffs.p_exponent
    b = bvp.coeffs.q_exponent
    if bvp.bc.family is BCFamily.DIRICHLET_ROBIN:
        if not 0.0 <= a < 1.0:
            raise NonIntegrableReciprocal(
                f"1/p is not integrable on (0,1] for p_exponent={a}; "
                "dirichlet-robin problems need p_exponent in [0,1)")
    else:
        if a < 0.0:
            raise ValidationError("p_exponent must be >= 0")
        if b + 1.0 - a <= -1.0:
            warnings.warn(
                "int_0^1 (1/p) int_0^x q is not finite for "
                f"p_exponent={a}, q_exponent={b}; the problem lies outside "
                "the guaranteed class and quadrature may fail",
                ValidationWarning, stacklevel=2)


# -- configuration files ------------------------------------------------------

def load_problem(config_text: str) -> SingularBVP:
    """Parse and validate a problem from its text configuration.

    The format is a version header line followed by INI-style sections::

        oham-problem v1

        [coefficients]
        p_exponent = 2
        q_exponent = 2
        # p_smooth / q_smooth: optional expressions in x

        [bc]
        family = neumann-robin
        alpha = 1
        beta = 1
        gamma = 0
        # delta1 = ...   (dirichlet-robin only)

        [nonlinearity]
        f = exp(-y)
        form = minus-div

        [parameters]
        # named constants usable inside the expressions
    """
    lines = config_text.splitlines()
    while lines and not lines[0].strip():
        lines.pop(0)
    if not lines or lines[0].strip() != CONFIG_HEADER:
        raise ParseError(f"first line must be {CONFIG_HEADER!r}", line=1, col=1)
    body = "\n".join(lines[1:])

    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    try:
        cp.read_string(body)
    except configparser.Error as exc:
        line = getattr(exc, "lineno", None)
        raise ParseError(f"bad configuration: {exc.message}",
                         line=(line + 1) if line else None, col=1) from None

    def need(section, key):
        if not cp.has_section(section):
            raise ParseError(f"missing section [{section}]")
        if not cp.has_option(section, key):
            raise ParseError(f"missing key {key!r} in section [{section}]")
        return cp.get(section, key)

    def need_float(section, key):
        raw = need(section, key)
        try:
            return float(raw)
        except ValueError:
            raise ParseError(f"{section}.{key} must be a number, got {raw!r}") from None

    params = {}
    if cp.has_section("parameters"):
        for name in cp.options("parameters"):
            try:
                params[name] = float(cp.get("parameters", name))
            except ValueError:
                raise ParseError(f"parameter {name!r} must be a number") from None

    p_smooth = cp.get("coefficients", "p_smooth", fallback=None)
    q_smooth = cp.get("coefficients", "q_smooth", fallback=None)
    coeffs = CoefficientPair(
        p_exponent=need_float("coefficients", "p_exponent"),
        q_exponent=need_float("coefficients", "q_exponent"),
        p_smooth=parse_expression(p_smooth, params) if p_smooth else None,
        q_smooth=parse_expression(q_smooth, params) if q_smooth else None,
    )

    family_raw = need("bc", "family").strip().lower()
    try:
        family = BCFamily(family_raw)
    except ValueError:
        raise ParseError(f"unknown bc family {family_raw!r}; expected "
                         f"'dirichlet-robin' or 'neumann-robin'") from None
    delta1 = None
    if family is BCFamily.DIRICHLET_ROBIN:
        delta1 = need_float("bc", "delta1")
    bc = BoundaryConditions(family, alpha=need_float("bc", "alpha"),
                            beta=need_float("bc", "beta"),
                            gamma=need_float("bc", "gamma"), delta1=delta1)

    f = NonlinearityRule(parse_expression(need("nonlinearity", "f"), params))
    form_raw = cp.get("nonlinearity", "form", fallback="minus-div").strip().lower()
    try:
        sign = SignConvention(form_raw)
    except ValueError:
        raise ParseError(f"unknown form {form_raw!r}; expected "
                         f"'minus-div' or 'plus-div'") from None

    bvp = SingularBVP(coeffs, bc, f, sign)
    validate_bvp(bvp)
    return bvp


# -- reference tables ---------------------------------------------------------

REFERENCE_TABLES: dict[int, ReferenceTable] = {}


def _add_table(tbl: ReferenceTable):
    REFERENCE_TABLES[tbl.number] = tbl


_add_table(ReferenceTable(
    number=1, problem_id="P1", parameters={"alpha": 0.5, "beta": 1.0},
    kind="error", error_tol=1e-10, solution_tol=1e-8,
    rows=(
        (0.1, 3.16e-08, 2.53e-08, 5.38e-13, 4.28e-14, -1.410986974, -1.410986974),
        (0.2, 4.70e-08, 3.44e-08, 8.19e-13, 5.24e-14, -1.435084525, -1.435084525),
        (0.3, 6.15e-08, 3.86e-08, 1.07e-12, 5.55e-14, -1.458615023, -1.458615023),
        (0.4, 7.62e-08, 3.94e-08, 1.32e-12, 5.70e-14, -1.481604541, -1.481604541),
        (0.5, 9.11e-08, 3.73e-08, 1.54e-12, 5.92e-14, -1.504077397, -1.504077397),
        (0.6, 1.04e-07, 3.28e-08, 1.71e-12, 6.17e-14, -1.526056303, -1.526056303),
        (0.7, 1.12e-07, 2.63e-08, 1.74e-12, 6.21e-14, -1.547562509, -1.547562509),
        (0.8, 1.08e-07, 1.81e-08, 1.53e-12, 5.24e-14, -1.568615918, -1.568615918),
        (0.9, 7.72e-08, 8.07e-09, 9.51e-13, 2.90e-14, -1.589235205, -1.589235205),
    )))

_add_table(ReferenceTable(
    number=2, problem_id="P2", parameters={"n": 1.5, "sigma": 1.0},
    kind="residual", residual_tol=1e-7,
    rows=(
        (0.1, 5.20e-04, 7.56e-06, 3.75e-07, 1.22e-13, 0.859202, 0.859202),
        (0.2, 4.88e-04, 7.15e-06, 3.50e-07, 4.96e-12, 0.863188, 0.863188),
        (0.3, 4.38e-04, 6.52e-06, 3.10e-07, 1.34e-11, 0.869870, 0.869870),
        (0.4, 3.74e-04, 5.72e-06, 2.61e-07, 2.56e-11, 0.879303, 0.879303),
        (0.5, 3.02e-04, 4.79e-06, 2.07e-07, 4.03e-11, 0.891566, 0.891566),
        (0.6, 2.27e-04, 3.66e-06, 1.53e-07, 5.18e-11, 0.906766, 0.906766),
        (0.7, 1.56e-04, 2.08e-06, 1.03e-07, 4.09e-11, 0.925033, 0.925033),
        (0.8, 9.25e-05, 5.69e-07, 5.95e-08, 4.75e-11, 0.946527, 0.946527),
        (0.9, 3.98e-05, 5.62e-06, 2.50e-08, 3.58e-10, 0.971441, 0.971441),
    )))

_add_table(ReferenceTable(
    number=3, problem_id="P2", parameters={"n": 2.0, "sigma": 1.5},
    kind="residual", residual_tol=1e-4,
    rows=(
        (0.1, 3.69e-01, 1.21e-03, 1.34e-01, 9.57e-08, 0.759370, 0.750609),
        (0.2, 3.46e-01, 1.14e-03, 1.25e-01, 1.88e-07, 0.765211, 0.756965),
        (0.3, 3.10e-01, 1.03e-03, 1.10e-01, 3.33e-07, 0.775144, 0.767704),
        (0.4, 2.64e-01, 8.79e-04, 9.13e-02, 5.10e-07, 0.789464, 0.783048),
        (0.5, 2.13e-01, 6.84e-04, 7.16e-02, 6.56e-07, 0.808584, 0.803324),
        (0.6, 1.60e-01, 4.01e-04, 5.24e-02, 5.93e-07, 0.833035, 0.828980),
        (0.7, 1.10e-01, 7.74e-05, 3.50e-02, 1.88e-07, 0.863480, 0.860603),
        (0.8, 6.53e-02, 9.87e-04, 2.03e-02, 3.12e-06, 0.900738, 0.898953),
        (0.9, 2.85e-02, 2.82e-03, 8.71e-03, 1.21e-05, 0.945823, 0.945003),
    )))

_add_table(ReferenceTable(
    number=4, problem_id="P2", parameters={"n": 2.0, "sigma": 2.0},
    kind="residual", residual_tol=1e-2, expect_adm_divergent=True,
    rows=(
        (0.1, 0.083, 1.63e-04, 1.140, 9.69e-07, 4.265570, 0.641604),
        (0.2, 0.316, 6.14e-04, 4.160, 4.10e-06, 4.060708, 0.649873),
        (0.3, 0.650, 1.23e-03, 7.990, 9.92e-06, 3.741832, 0.663942),
        (0.4, 1.013, 1.87e-03, 11.37, 1.85e-05, 3.339042, 0.684262),
        (0.5, 1.317, 2.30e-03, 13.26, 2.67e-05, 2.887879, 0.711509),
        (0.6, 1.482, 2.17e-03, 13.20, 1.83e-05, 2.424517, 0.746636),
        (0.7, 1.444, 6.53e-04, 11.30, 6.65e-05, 1.981583, 0.790944),
        (0.8, 1.176, 4.45e-03, 8.071, 4.25e-04, 1.585305, 0.846200),
        (0.9, 0.684, 1.89e-02, 4.130, 1.67e-04, 1.254310, 0.914796),
    )))

_add_table(ReferenceTable(
    number=5, problem_id="P3",
    parameters={"a2": 1.0, "b2": 1.0, "g2": 0.0, "delta": 1.0},
    kind="residual", residual_tol=1e-4, solution_tol=1e-4,
    rows=(
        (0.1, 1.18e-01, 2.05e-04, 8.05e-02, 2.41e-06, 0.3442719, 0.3663613),
        (0.2, 1.15e-01, 1.87e-04, 7.87e-02, 2.40e-06, 0.3411278, 0.3628931),
        (0.3, 1.12e-01, 1.57e-04, 7.58e-02, 2.38e-06, 0.3358608, 0.3570965),
        (0.4, 1.07e-01, 1.15e-04, 7.19e-02, 2.37e-06, 0.3284310, 0.3489474),
        (0.5, 1.01e-01, 6.13e-05, 6.73e-02, 2.36e-06, 0.3187835, 0.3384112),
        (0.6, 9.44e-02, 4.61e-06, 6.20e-02, 2.38e-06, 0.3068490, 0.3254426),
        (0.7, 8.68e-02, 8.39e-05, 5.63e-02, 2.44e-06, 0.2925442, 0.3099852),
        (0.8, 7.87e-02, 1.79e-04, 5.05e-02, 2.57e-06, 0.2757729, 0.2919703),
        (0.9, 7.04e-02, 2.94e-04, 4.46e-02, 2.79e-06, 0.2564260, 0.2713162),
    )))

_add_table(ReferenceTable(
    number=6, problem_id="P3",
    parameters={"a2": 2.0, "b2": 1.0, "g2": 0.0, "delta": 1.0},
    kind="residual", residual_tol=1e-5, solution_tol=1e-4,
    rows=(
        (0.1, 1.35e-02, 6.11e-05, 8.11e-04, 9.12e-08, 0.2686241, 0.2687568),
        (0.2, 1.31e-02, 5.54e-05, 7.77e-04, 8.83e-08, 0.2648035, 0.2649327),
        (0.3, 1.24e-02, 4.62e-05, 7.25e-04, 8.39e-08, 0.2584162, 0.2585397),
        (0.4, 1.14e-02, 3.37e-05, 6.58e-04, 7.87e-08, 0.2494321, 0.2495481),
        (0.5, 1.03e-02, 1.82e-05, 5.80e-04, 7.35e-08, 0.2378088, 0.2379158),
        (0.6, 9.08e-03, 2.51e-07, 4.98e-04, 6.93e-08, 0.2234908, 0.2235876),
        (0.7, 7.77e-03, 2.23e-05, 4.16e-04, 6.72e-08, 0.2064084, 0.2064944),
        (0.8, 6.46e-03, 4.92e-05, 3.38e-04, 6.87e-08, 0.1864771, 0.1865520),
        (0.9, 5.21e-03, 8.36e-05, 2.68e-04, 7.65e-08, 0.1635958, 0.1636596),
    )))

_add_table(ReferenceTable(
    number=7, problem_id="P4", parameters={"n": 0.76129, "k": 0.03119},
    kind="residual", residual_tol=1e-8, solution_tol=1e-7,
    rows=(
        (0.1, 2.80e-06, 7.95e-07, 1.95e-10, 1.04e-10, 0.829706092, 0.829706092),
        (0.2, 2.49e-06, 6.94e-07, 1.50e-10, 7.76e-11, 0.833374734, 0.833374734),
        (0.3, 2.03e-06, 5.54e-07, 9.42e-11, 4.61e-11, 0.839489914, 0.839489914),
        (0.4, 1.50e-06, 4.07e-07, 4.56e-11, 2.00e-11, 0.848052785, 0.848052785),
        (0.5, 9.93e-07, 2.83e-07, 1.45e-11, 4.59e-12, 0.859064927, 0.859064927),
        (0.6, 5.66e-07, 2.01e-07, 6.60e-13, 1.23e-12, 0.872528320, 0.872528320),
        (0.7, 2.63e-07, 1.59e-07, 2.52e-12, 1.82e-12, 0.888445306, 0.888445306),
        (0.8, 8.70e-08, 1.49e-07, 1.77e-12, 9.98e-13, 0.906818548, 0.906818548),
        (0.9, 1.13e-08, 1.52e-07, 7.45e-13, 4.01e-13, 0.927650988, 0.927650988),
    )))

_add_table(ReferenceTable(
    number=8, problem_id="P5", parameters={"alpha": 1.0, "delta": 1.0},
    kind="multi-eps", eps_cases=(5.0, 10.0, 15.0), residual_tol=5e-2,
    expect_adm_divergent=True, adm_residual_floor=1.0,
    rows=(
        (0.1, 96.820, 3.79e-04, 1190.90, 3.95e-05, 173751.94, 1.73e-03),
        (0.2, 200.650, 4.41e-04, 2334.05, 2.93e-04, 299967.18, 1.11e-03),
        (0.3, 312.307, 2.20e-05, 3295.97, 7.10e-04, 350180.75, 2.71e-03),
        (0.4, 423.542, 1.03e-03, 3858.23, 8.85e-04, 324708.56, 8.77e-03),
        (0.5, 519.051, 2.45e-03, 3823.73, 2.47e-04, 248739.93, 1.52e-02),
        (0.6, 582.390, 4.01e-03, 3159.91, 1.51e-03, 157883.64, 2.08e-02),
        (0.7, 602.770, 5.44e-03, 2068.78, 4.10e-03, 81587.42, 2.52e-02),
        (0.8, 579.289, 6.62e-03, 914.41, 6.73e-03, 33136.89, 2.90e-02),
        (0.9, 520.645, 7.53e-03, 40.79, 8.66e-03, 10098.14, 3.26e-02),
    )))

_add_table(ReferenceTable(
    number=9, problem_id="P5", parameters={"alpha": 2.0, "delta": 1.0},
    kind="multi-eps", eps_cases=(5.0, 10.0, 15.0), residual_tol=5e-2,
    expect_adm_divergent=True, adm_residual_floor=1.0,
    rows=(
        (0.1, 380.762, 2.28e-03, 1279.93, 1.06e-03, 29880.52, 4.02e-03),
        (0.2, 332.801, 1.83e-03, 1129.84, 4.31e-04, 25360.17, 6.66e-04),
        (0.3, 264.086, 1.09e-03, 917.57, 3.92e-04, 19118.32, 3.28e-03),
        (0.4, 187.844, 1.19e-04, 686.12, 1.18e-03, 12594.80, 6.41e-03),
        (0.5, 116.761, 9.99e-04, 474.09, 1.77e-03, 7033.77, 8.11e-03),
        (0.6, 59.804, 2.13e-03, 305.58, 2.12e-03, 3128.11, 8.61e-03),
        (0.7, 20.680, 3.14e-03, 187.06, 2.24e-03, 928.97, 8.56e-03),
        (0.8, 1.774, 3.97e-03, 111.44, 2.21e-03, 18.88, 8.44e-03),
        (0.9, 11.741, 4.57e-03, 65.80, 2.08e-03, 178.08, 8.39e-03),
    )))
