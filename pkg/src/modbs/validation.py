"""Numerical self-checks shared by ``modbs validate`` and the acceptance tests.

Every check returns a :class:`CheckResult` holding the measured quantity and
the threshold it was held to. Passing ``tol`` replaces the threshold, which
is how an impossible tolerance is shown to fail loudly.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coefficients import build_spectral, sub_payoff_coeffs_closed, sub_payoff_coeffs_quadrature
from .config import RunConfig
from .figures import figure_series, series_csv
from .models import DEFAULT_PARAMS, EvalPoint, Variant, ode_residual, random_params
from .oracle_fd import pde_residual_of_spectral, solve_fd
from .pricing import bs_call, bs_put, payoff_put, price_curve
from .quadrature import integrate_semiinfinite
from .specfun import laguerre_table


@dataclass
class CheckResult:
    name: str
    passed: bool
    measured: float
    threshold: float
    detail: str = ""

    def line(self):
        flag = "PASS" if self.passed else "FAIL"
        text = f"{flag} {self.name}: measured={self.measured:.3e} threshold={self.threshold:.3e}"
        return text + (f" ({self.detail})" if self.detail else "")


def _pick(default, tol):
    return default if tol is None else tol


def check_orthogonality(tol=None, max_degree=20):
    """``int_0^inf e^-x x L_n^1 L_m^1 dx = (n+1) delta_nm`` for n, m <= max_degree."""
    thr = _pick(1e-8, tol)
    N = max_degree

    def integrand(x):
        lag = laguerre_table(N, 1, x, log_weight=0.5 * (np.log(x) - x))
        return np.einsum("ip,jp->pij", lag, lag).reshape(len(x), -1)

    res = integrate_semiinfinite(integrand, 0.0, 1e-12, scale=8.0, initial=8)
    got = np.asarray(res.value).reshape(N + 1, N + 1)
    want = np.diag(np.arange(1, N + 2, dtype=float))
    err = float(np.max(np.abs(got - want)))
    return CheckResult("orthogonality", err < thr, err, thr, f"n,m <= {N}")


def check_eigen_residuals(tol=None, seed=0, max_degree=50, n_random=5):
    """ODE residual of every eigenpair on a 30-point log grid in [0.01, 20]."""
    thr = _pick(1e-9, tol)
    rng = np.random.default_rng(seed)
    sets = [DEFAULT_PARAMS] + random_params(rng, n_random)
    s = np.geomspace(0.01, 20.0, 30)
    worst = 0.0
    for params in sets:
        for variant in (Variant.SUB, Variant.SUPRA):
            for n in range(max_degree + 1):
                worst = max(worst, float(np.max(np.abs(ode_residual(variant, n, s, params)))))
    return CheckResult("eigen_residuals", worst < thr, worst, thr,
                       f"{len(sets)} parameter sets, n <= {max_degree}")


def check_sub_cross_path(tol=None, max_degree=50):
    """Closed-form sub coefficients against direct quadrature."""
    thr = _pick(1e-8, tol)
    closed = sub_payoff_coeffs_closed(max_degree, DEFAULT_PARAMS)
    quad = sub_payoff_coeffs_quadrature(max_degree, DEFAULT_PARAMS, 1e-13)
    rel = float(np.max(np.abs(closed - quad) / np.abs(quad)))
    return CheckResult("sub_coefficients_cross_path", rel < thr, rel, thr,
                       f"relative, m <= {max_degree}")


def rms_at_maturity(variant, order, samples=200):
    p = DEFAULT_PARAMS
    s = np.linspace(0.1, 6.0, samples)
    sol = build_spectral(variant, p, order)
    err = price_curve(sol, p.maturity, s) - payoff_put(s, p.strike)
    return float(np.sqrt(np.mean(err ** 2)))


def check_terminal(variant, high, low=20, tol=None):
    """RMS payoff error at maturity: below 0.05 K and smaller than at ``low``."""
    variant = Variant.parse(variant)
    thr = _pick(0.05 * DEFAULT_PARAMS.strike, tol)
    rms_high = rms_at_maturity(variant, high)
    rms_low = rms_at_maturity(variant, low)
    ok = rms_high < thr and rms_high < rms_low
    return CheckResult(f"terminal_convergence_{variant.value}", ok, rms_high, thr,
                       f"rms N={high} {rms_high:.4f} vs N={low} {rms_low:.4f}")


def ordering_margins(sub_order, supra_order, times=(0.0, 3.0), samples=200):
    """Largest ``sub - bs`` and ``bs - supra`` over the sample grid."""
    p = DEFAULT_PARAMS
    s = np.linspace(0.1, 6.0, samples)
    sub = build_spectral(Variant.SUB, p, sub_order)
    supra = build_spectral(Variant.SUPRA, p, supra_order)
    above, below = -math.inf, -math.inf
    for t in times:
        ref = bs_put(t, s, p)
        above = max(above, float(np.max(price_curve(sub, t, s) - ref)))
        below = max(below, float(np.max(ref - price_curve(supra, t, s))))
    return above, below


def check_ordering(tol=None, sub_order=2000, supra_order=300):
    """Sub prices below and supra prices above Black-Scholes, up to 0.02 K."""
    thr = _pick(0.02 * DEFAULT_PARAMS.strike, tol)
    above, below = ordering_margins(sub_order, supra_order)
    fig_above, fig_below = ordering_margins(20, 20)
    worst = max(above, below)
    detail = (f"N=({sub_order},{supra_order}): sub-bs<={above:.4f}, bs-supra<={below:.4f}; "
              f"figure order N=20 for reference: sub-bs<={fig_above:.4f}, "
              f"bs-supra<={fig_below:.4f}")
    return CheckResult("ordering_vs_black_scholes", worst <= thr, worst, thr, detail)


def fd_standard_error(n, s_max_factor=12.0):
    p = DEFAULT_PARAMS
    grid = solve_fd(Variant.STANDARD, p, s_max_factor * p.strike, n, n)
    s = grid.s_nodes
    mask = (s >= 0.5 * p.strike) & (s <= 2.0 * p.strike)
    err = 0.0
    for t in (0.0, 0.5 * p.maturity):
        err = max(err, float(np.max(np.abs(grid.at_time(t)[mask] - bs_put(t, s[mask], p)))))
    return err


def check_fd_closure(tol=None, n=800):
    """Crank-Nicolson vs closed-form put, plus contraction under grid doubling."""
    thr = _pick(5e-3, tol)
    coarse = fd_standard_error(n)
    fine = fd_standard_error(2 * n)
    ratio = coarse / fine
    ok = coarse < thr and ratio >= 3.0
    return CheckResult("fd_vs_closed_form", ok, coarse, thr,
                       f"{n}x{n} err {coarse:.2e}, {2 * n}x{2 * n} err {fine:.2e}, "
                       f"contraction {ratio:.2f} (need >= 3)")


def check_pde_residual(tol=None, seed=0, order=20, n_points=50):
    """PDE residual of the order-20 series at random interior points."""
    thr = _pick(1e-4, tol)
    p = DEFAULT_PARAMS
    rng = np.random.default_rng(seed)
    worst = 0.0
    for variant in (Variant.SUB, Variant.SUPRA):
        sol = build_spectral(variant, p, order)
        for _ in range(n_points):
            pt = EvalPoint(float(rng.uniform(0.1, p.maturity - 0.1)),
                           float(rng.uniform(0.25, 2.0 * p.strike)))
            worst = max(worst, abs(pde_residual_of_spectral(sol, pt)))
    return CheckResult("pde_residual_of_series", worst < thr, worst, thr,
                       f"{n_points} points per variant")


def check_parity(tol=None, seed=0, n_points=100):
    """``call - put = S - K e^{-r(T-t)}`` relative to the size of its terms."""
    thr = _pick(1e-12, tol)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for params in random_params(rng, n_points):
        t = float(rng.uniform(0.0, 0.99 * params.maturity))
        s = float(rng.uniform(0.05, 3.0) * params.strike)
        disc = params.strike * math.exp(-params.r * (params.maturity - t))
        lhs = bs_call(t, s, params) - bs_put(t, s, params)
        worst = max(worst, abs(lhs - (s - disc)) / max(s, disc))
    return CheckResult("put_call_parity", worst < thr, worst, thr, f"{n_points} points")


def check_determinism(config=None):
    """Two figure runs give byte-identical CSV text."""
    config = config or RunConfig()
    first = {k: series_csv(v) for k, v in figure_series(config).items()}
    second = {k: series_csv(v) for k, v in figure_series(config).items()}
    diff = sum(first[k] != second[k] for k in first)
    return CheckResult("figures_deterministic", diff == 0, float(diff), 0.0,
                       "number of differing CSV files")


def run_all(tol=None, seed=0):
    return [
        check_orthogonality(tol),
        check_eigen_residuals(tol, seed),
        check_sub_cross_path(tol),
        check_terminal(Variant.SUB, 2000, tol=tol),
        check_terminal(Variant.SUPRA, 300, tol=tol),
        check_ordering(tol),
        check_fd_closure(tol),
        check_pde_residual(tol, seed),
        check_parity(tol, seed),
        check_determinism(),
    ]
