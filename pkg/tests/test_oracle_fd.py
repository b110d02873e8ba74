import numpy as np
import pytest

from modbs.coefficients import build_spectral
from modbs.errors import DomainError
from modbs.models import DEFAULT_PARAMS, EvalPoint
from modbs.oracle_fd import Boundary, default_s_max, pde_residual_of_spectral, solve_fd
from modbs.pricing import bs_put, payoff_put, price_curve


def _max_err_vs_bs(grid, params, s_hi=6.0):
    s = grid.s_nodes[(grid.s_nodes <= s_hi)]
    return np.max(np.abs(grid.interpolate(0.0, s) - bs_put(0.0, s, params)))


def test_standard_matches_closed_form(params):
    grid = solve_fd("standard", params, n_s=400, n_t=400)
    assert _max_err_vs_bs(grid, params) < 5e-3


def test_standard_refinement_shrinks_error(params):
    coarse = _max_err_vs_bs(solve_fd("standard", params, n_s=200, n_t=200), params)
    fine = _max_err_vs_bs(solve_fd("standard", params, n_s=400, n_t=400), params)
    assert fine < coarse / 3


@pytest.mark.parametrize("variant", ["sub", "supra"])
def test_refinement_self_convergence(variant, params):
    probe = np.linspace(1.0, 5.0, 9)
    rows = [solve_fd(variant, params, n_s=n, n_t=n).interpolate(0.0, probe) for n in (150, 300, 600)]
    d1 = np.max(np.abs(rows[1] - rows[0]))
    d2 = np.max(np.abs(rows[2] - rows[1]))
    assert d2 < d1


@pytest.mark.parametrize("variant", ["standard", "sub", "supra"])
def test_terminal_row_is_payoff(variant, params):
    grid = solve_fd(variant, params, n_s=64, n_t=32)
    np.testing.assert_array_equal(grid.values[-1], payoff_put(grid.s_nodes, params.strike))
    assert grid.t_nodes[-1] == params.maturity


def test_sub_spectral_boundary_interior_agreement(params):
    sol = build_spectral("sub", params, 2000)
    grid = solve_fd("sub", params, n_s=1200, n_t=1200, bc="spectral-matched", spectral=sol)
    s = np.linspace(1.0, 5.0, 21)
    err = np.max(np.abs(grid.interpolate(0.0, s) - price_curve(sol, np.zeros_like(s), s)))
    assert err < 1e-3


def test_supra_spectral_boundary_agreement(params):
    sol = build_spectral("supra", params, 300)
    grid = solve_fd("supra", params, s_max=12.0, n_s=1200, n_t=1200, bc="spectral", spectral=sol)
    s = np.linspace(0.5, 6.0, 23)
    err = np.max(np.abs(grid.interpolate(0.0, s) - price_curve(sol, np.zeros_like(s), s)))
    assert err < 1e-4
    assert grid.bc_spec["lower"] == "K*exp(-r*(T-t))" and grid.bc_spec["upper"] == "spectral"


def test_log_grid_standard(params):
    grid = solve_fd("standard", params, n_s=600, n_t=400, log_grid=True)
    assert grid.s_nodes[0] == 0.0 and np.all(np.diff(grid.s_nodes) > 0)
    s = np.linspace(0.5, 6.0, 12)
    assert np.max(np.abs(grid.interpolate(0.0, s) - bs_put(0.0, s, params))) < 5e-3
    assert grid.bc_spec["grid"] == "log"


def test_bc_spec_recorded(params):
    grid = solve_fd("sub", params, n_s=32, n_t=32)
    assert grid.bc_spec["choice"] == "dirichlet"
    assert grid.bc_spec["s_max"] == default_s_max("sub", params.strike) == 18.0


def test_pde_residual_examples(params):
    for variant, order in (("sub", 20), ("supra", 20)):
        sol = build_spectral(variant, params, order)
        assert abs(pde_residual_of_spectral(sol, EvalPoint(1.0, 2.0))) < 1e-4


def test_pde_residual_shrinks_with_step(params):
    sol = build_spectral("sub", params, 20)
    pt = EvalPoint(2.0, 1.5)
    big = abs(pde_residual_of_spectral(sol, pt, h_s=0.1, h_t=0.1))
    small = abs(pde_residual_of_spectral(sol, pt, h_s=0.01, h_t=0.01))
    assert small < big


def test_error_cases(params):
    with pytest.raises(DomainError):
        solve_fd("sub", params, n_s=8)
    with pytest.raises(DomainError):
        solve_fd("sub", params, s_max=2.0)
    with pytest.raises(DomainError):
        solve_fd("sub", params, bc="spectral")
    with pytest.raises(DomainError):
        solve_fd("sub", params, bc="neumann")
    with pytest.raises(DomainError):
        solve_fd("sub", params, bc="spectral", spectral=build_spectral("supra", params, 5))
    sol = build_spectral("sub", params, 5)
    with pytest.raises(DomainError):
        pde_residual_of_spectral(sol, EvalPoint(4.9999, 1.0))
    assert Boundary.parse("Dirichlet-Discounted-Strike") is Boundary.DIRICHLET
