import math

import numpy as np
import pytest

from oham.diagnostics import (build_report, differential_residual,
                              lipschitz_check, ratio_test, truncation_bound)
from oham.engine import HomotopySeries, assemble, run_recursion
from oham.errors import InvalidDelta
from oham.expr import NonlinearityRule
from oham.grid import CollocationGrid, GridFunction
from oham.kernel import (BCFamily, BoundaryConditions, CoefficientPair,
                         build_kernel)
from oham.problems import registry_get

from conftest import bench_setup, bench_solve

XS = np.arange(1, 10) * 0.1


def _series_with_norms(grid, norms):
    comps = [GridFunction(grid, np.full(grid.n_nodes, v)) for v in norms]
    return HomotopySeries(-1.0, len(norms) - 1, comps)


class TestRatioTest:
    def test_geometric(self):
        grid = CollocationGrid(8, 10)
        ratios, k0, delta = ratio_test(_series_with_norms(grid, [1, 0.5, 0.25, 0.125]))
        assert np.allclose(ratios, 0.5)
        assert k0 == 0 and delta == pytest.approx(0.5)

    def test_transient_then_tail(self):
        grid = CollocationGrid(8, 10)
        ratios, k0, delta = ratio_test(_series_with_norms(grid, [1, 2, 1, 0.5, 0.25]))
        assert k0 == 1 and delta == pytest.approx(0.5)

    def test_divergent(self):
        grid = CollocationGrid(8, 10)
        ratios, k0, delta = ratio_test(_series_with_norms(grid, [1, 2, 4, 8]))
        assert k0 is None and delta is None

    def test_zero_components(self):
        grid = CollocationGrid(8, 10)
        ratios, k0, delta = ratio_test(_series_with_norms(grid, [1.0, 0.0, 0.0]))
        assert k0 == 0 and delta == 0.0


class TestTruncationBound:
    def test_direct_substitution(self):
        grid = CollocationGrid(8, 10)
        series = _series_with_norms(grid, [1, 0.5, 0.25, 0.125])
        assert truncation_bound(series, 0, 0.5) == pytest.approx(0.125)

    def test_small_delta_limit(self):
        grid = CollocationGrid(8, 10)
        series = _series_with_norms(grid, [1, 1e-8, 1e-16, 1e-24])
        assert truncation_bound(series, 0, 1e-8) < 1e-31

    def test_invalid_delta(self):
        grid = CollocationGrid(8, 10)
        series = _series_with_norms(grid, [1, 2])
        with pytest.raises(InvalidDelta):
            truncation_bound(series, 0, 1.5)

    @pytest.mark.parametrize("M", [3, 5, 8, 10])
    def test_bound_dominates_true_error(self, M):
        problem, report, series = bench_solve("P1", {"alpha": 0.5, "beta": 1.0}, M=M)
        assert report.truncation_bound is not None
        assert report.truncation_bound >= report.abs_error.max()


class TestDifferentialResidual:
    def test_exact_solution_of_singular_problem(self, p1_case):
        problem, kern, grid, f, q = p1_case
        phi = GridFunction(grid, problem.exact_solution(grid.nodes))
        res = differential_residual(problem.bvp, phi, XS)
        assert res.max() < 1e-9

    def test_source_term_solves_homogeneous_problem(self):
        # affine source term (p = 1): exact annihilation up to rounding
        cp = CoefficientPair(p_exponent=0.0, q_exponent=0.0)
        bc = BoundaryConditions(BCFamily.DIRICHLET_ROBIN, alpha=1.0, beta=0.5,
                                gamma=2.0, delta1=-1.0)
        grid = CollocationGrid(64, 40)
        kern = build_kernel(cp, bc)
        from oham.problems import SignConvention, SingularBVP
        bvp = SingularBVP(cp, bc, NonlinearityRule.parse("0*y"),
                          SignConvention.MINUS_DIV)
        phi = GridFunction(grid, np.asarray(kern.g_fn(grid.nodes)))
        assert differential_residual(bvp, phi, XS).max() < 1e-10

    def test_neumann_constant_source_term(self, p3_case):
        problem, kern, grid, f, q = p3_case
        from oham.problems import SignConvention, SingularBVP
        bvp = SingularBVP(problem.bvp.coeffs, problem.bvp.bc,
                          NonlinearityRule.parse("0*y"), SignConvention.MINUS_DIV)
        phi = GridFunction(grid, np.asarray(kern.g_fn(grid.nodes)))
        assert differential_residual(bvp, phi, XS).max() < 1e-12

    def test_reference_magnitude_p3(self):
        problem, report, series = bench_solve("P3", {"a2": 1.0, "b2": 1.0}, M=10)
        at_half = report.diff_residual[4]
        # stored reference value 2.36e-6, reproduced within one order
        assert 2.36e-7 < at_half < 2.36e-5

    def test_interior_points_only(self, p1_case):
        problem, kern, grid, f, q = p1_case
        phi = GridFunction(grid, np.zeros(grid.n_nodes))
        with pytest.raises(ValueError):
            differential_residual(problem.bvp, phi, np.array([0.0, 0.5]))


class TestLipschitz:
    def test_constant_nonlinearity_contracts(self, p3_case):
        problem, kern, grid, f, q = p3_case
        from oham.problems import SignConvention, SingularBVP
        bvp = SingularBVP(problem.bvp.coeffs, problem.bvp.bc,
                          NonlinearityRule.parse("0*y + 3"), SignConvention.MINUS_DIV)
        L, mass, contraction = lipschitz_check(bvp, kern, grid, (0.0, 1.0))
        assert L == 0.0 and contraction

    def test_kernel_mass_closed_form(self, p3_case):
        problem, kern, grid, f, q = p3_case
        L, mass, contraction = lipschitz_check(problem.bvp, kern, grid, (0.0, 0.5))
        assert mass == pytest.approx(0.5, abs=1e-10)

    def test_oxygen_diffusion_bound(self):
        problem, kern, grid, f, q = bench_setup("P4", {})
        n, k = 0.76129, 0.03119
        L, mass, contraction = lipschitz_check(problem.bvp, kern, grid, (0.0, 1.0))
        assert L <= n / k + 1e-9
        report = bench_solve("P4", {}, M=10)[1]
        # on the computed solution's range the fixed point contracts
        assert report.contraction

    def test_contraction_implies_adm_convergence(self):
        # cross-validated on the problems with known contraction
        for pid, params in (("P1", {"alpha": 0.5, "beta": 1.0}),
                            ("P3", {"a2": 1.0, "b2": 1.0}),
                            ("P4", {})):
            problem, report, _ = bench_solve(pid, params, M=10)
            if report.contraction:
                _, adm_report, adm_series = bench_solve(pid, params, M=10, c0=-1.0)
                ratios, k0, delta = ratio_test(adm_series)
                assert k0 is not None and delta < 1.0


class TestReport:
    def test_fields_present(self):
        problem, report, series = bench_solve("P1", {"alpha": 0.5, "beta": 1.0}, M=10)
        assert report.abs_error is not None
        assert len(report.delta_ratios) == series.achieved_order
        assert report.profile is not None
        assert not report.diverged

    def test_residual_notions_agree_in_order_of_magnitude(self):
        for pid, params in (("P3", {"a2": 1.0, "b2": 1.0}), ("P4", {})):
            _, report, _ = bench_solve(pid, params, M=10)
            d = max(report.diff_residual.max(), 1e-13)
            i = max(report.integral_residual.max(), 1e-13)
            assert d / i < 1e2 and i / d < 1e2

    def test_determinism(self):
        problem = registry_get("P3", {"a2": 1.0, "b2": 1.0})
        from oham.solver import SolveOptions, solve
        r1, _ = solve(problem, SolveOptions(order=5))
        r2, _ = solve(problem, SolveOptions(order=5))
        assert r1.c0 == r2.c0
        assert np.array_equal(r1.phi_at_xs, r2.phi_at_xs)
        assert np.array_equal(r1.diff_residual, r2.diff_residual)
