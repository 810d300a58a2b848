"""Solver for nonlinear doubly singular two-point boundary value problems.

The differential problem -(p(x) y')' = q(x) f(x, y) on (0,1), with p
vanishing at the left endpoint and q possibly unbounded there, is converted
to an equivalent Fredholm integral equation through an analytically
constructed Green's kernel, and the integral equation is solved by the
optimal homotopy analysis method: a deformation series whose
convergence-control parameter c0 is chosen automatically by minimising the
discrete averaged squared operator residual.
"""

from .diagnostics import (SolveReport, build_report, differential_residual,
                          lipschitz_check, ratio_test, truncation_bound)
from .engine import HomotopySeries, assemble, component_norms, run_recursion
from .errors import (DomainError, InvalidDelta, JetDomainError,
                     MissingParameter, NoConvergence, NoFiniteSample,
                     NonFiniteComponent, NonIntegrableReciprocal, OhamError,
                     ParseError, QuadratureDivergence, SingularSystem,
                     UnknownParameter, ValidationError, ValidationWarning,
                     ZeroAlpha, ZeroMu)
from .expr import NonlinearityRule, parse_expression
from .grid import (CollocationGrid, GridFunction, build_h_numeric,
                   differentiate, fredholm_apply, fredholm_operator,
                   interpolate, kernel_mass, sup_norm)
from .jet import Jet, adomian_oracle, jet_compose, jet_lift
from .kernel import (BCFamily, BoundaryConditions, CoefficientPair,
                     GreensKernel, build_kernel, eval_G, eval_g)
from .optimizer import ResidualProfile, discrete_E, integral_residual, optimize_c0
from .problems import (REFERENCE_TABLES, BenchmarkProblem, ReferenceTable,
                       SignConvention, SingularBVP, load_problem, registry_get,
                       validate_bvp)
from .solver import SolveOptions, solve

__version__ = "0.1.0"
