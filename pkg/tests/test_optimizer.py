import math

import numpy as np
import pytest

from oham.engine import assemble, run_recursion
from oham.errors import DomainError, NoFiniteSample, ValidationError
from oham.expr import NonlinearityRule
from oham.grid import GridFunction
from oham.optimizer import discrete_E, integral_residual, optimize_c0

from conftest import bench_setup

XS = np.arange(1, 10) * 0.1


def test_integral_residual_of_exact_solution(p1_case):
    problem, kern, grid, f, q = p1_case
    phi = GridFunction(grid, problem.exact_solution(grid.nodes))
    for x in XS:
        assert abs(integral_residual(kern, grid, f, q, phi, float(x))) < 1e-11


def test_integral_residual_trivial_cases(p1_case):
    _, kern, grid, _, q = p1_case
    f0 = NonlinearityRule.parse("0*y")
    g = GridFunction(grid, np.asarray(kern.g_fn(grid.nodes)))
    assert integral_residual(kern, grid, f0, q, g, 0.5) == pytest.approx(0.0, abs=1e-15)
    g1 = GridFunction(grid, g.values + 1.0)
    for x in (0.2, 0.5, 0.9):
        assert integral_residual(kern, grid, f0, q, g1, x) == pytest.approx(1.0, abs=1e-12)


def test_integral_residual_domain_check(p1_case):
    _, kern, grid, f, q = p1_case
    phi = GridFunction(grid, np.zeros(grid.n_nodes))
    with pytest.raises(DomainError):
        integral_residual(kern, grid, f, q, phi, 1.2)


def test_discrete_objective_zero_for_zero_nonlinearity(p1_case):
    _, kern, grid, _, q = p1_case
    f0 = NonlinearityRule.parse("0*y")
    factory = lambda c0: run_recursion(kern, grid, f0, q, c0, 4)
    for c0 in (-0.3, -1.0, -1.7):
        assert discrete_E(kern, grid, f0, q, factory, c0) < 1e-28


def test_discrete_objective_nonnegative_and_beats_adm(p1_case):
    _, kern, grid, f, q = p1_case
    factory = lambda c0: run_recursion(kern, grid, f, q, c0, 5)
    e_ref = discrete_E(kern, grid, f, q, factory, -0.970001)
    e_adm = discrete_E(kern, grid, f, q, factory, -1.0)
    assert 0.0 <= e_ref < e_adm


def test_discrete_objective_divergence_sentinel(p1_case):
    _, kern, grid, f, q = p1_case
    factory = lambda c0: run_recursion(kern, grid, f, q, c0, 6)
    assert discrete_E(kern, grid, f, q, factory, -40.0) == math.inf


def test_discrete_objective_validates_inputs(p1_case):
    _, kern, grid, f, q = p1_case
    factory = lambda c0: run_recursion(kern, grid, f, q, c0, 3)
    with pytest.raises(ValidationError):
        discrete_E(kern, grid, f, q, factory, -1.0, n=1)
    with pytest.raises(ValidationError):
        discrete_E(kern, grid, f, q, factory, 0.0)


class TestOptimize:
    def test_profile_invariants(self, p3_case):
        _, kern, grid, f, q = p3_case
        prof = optimize_c0(kern, grid, f, q, 5)
        lo, hi = prof.bracket
        assert lo <= prof.optimum <= hi
        assert all(prof.E_at_optimum <= E for _, E in prof.samples)
        assert all(E >= 0.0 for _, E in prof.samples if math.isfinite(E))

    def test_refinement_stays_in_winning_interval(self, p3_case):
        _, kern, grid, f, q = p3_case
        prof = optimize_c0(kern, grid, f, q, 5)
        scan = sorted(c for c, _ in prof.samples[:41])
        Es = [E for _, E in prof.samples[:41]]
        best = int(np.argmin(Es))
        lo = scan[max(best - 1, 0)]
        hi = scan[min(best + 1, 40)]
        assert lo - 1e-12 <= prof.optimum <= hi + 1e-12

    def test_reference_optimum_p3(self, p3_case):
        _, kern, grid, f, q = p3_case
        prof = optimize_c0(kern, grid, f, q, 10)
        assert prof.optimum == pytest.approx(-0.6666463, abs=0.02)

    def test_reference_optimum_p4(self):
        _, kern, grid, f, q = bench_setup("P4", {})
        prof = optimize_c0(kern, grid, f, q, 5)
        assert prof.optimum == pytest.approx(-1.045949, abs=0.02)

    def test_parallel_scan_is_deterministic(self, p3_case):
        _, kern, grid, f, q = p3_case
        p1 = optimize_c0(kern, grid, f, q, 4, max_workers=1)
        p8 = optimize_c0(kern, grid, f, q, 4, max_workers=8)
        assert p1.optimum == p8.optimum
        assert p1.samples == p8.samples

    def test_no_finite_sample(self, p3_case):
        _, kern, grid, f, q = p3_case
        with pytest.raises(NoFiniteSample) as exc:
            optimize_c0(kern, grid, f, q, 8, bracket=(-60.0, -30.0))
        assert exc.value.profile is not None
        assert all(not math.isfinite(E) for _, E in exc.value.profile.samples)

    def test_bracket_validation(self, p3_case):
        _, kern, grid, f, q = p3_case
        with pytest.raises(ValidationError):
            optimize_c0(kern, grid, f, q, 3, bracket=(-1.0, 1.0))
        with pytest.raises(ValidationError):
            optimize_c0(kern, grid, f, q, 3, bracket=(-0.5, -0.9))
