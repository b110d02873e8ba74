"""Expansion coefficients of the put payoff in the sub and supra eigenbases.

Two normalisations appear here:

* the *payoff* coefficient ``A_n``, with ``payoff(S) = sum_n A_n F_n(S)``;
* the stored-series coefficient ``c_n = A_n exp(-r (n + c) T)``, which
  multiplies ``exp(r (n + c) t) F_n(S)`` in the series for ``V(t, S)``.

Pricing always works from ``A_n`` with the damped factor
``exp(-r (n + c) (T - t))`` so that no growing exponential is ever formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, QuadratureError
from .models import ModelParams, Variant
from .quadrature import integrate_finite, integrate_semiinfinite
from .specfun import hyper_1_negm_2_2, laguerre_assoc, laguerre_plain, laguerre_table

DEFAULT_TOL = 1e-10
# Relative disagreement allowed between closed form and quadrature spot checks.
SPOT_CHECK_RTOL = 1e-8


@dataclass(frozen=True)
class SpectralSolution:
    """Truncated eigenfunction expansion for one variant and parameter set."""

    variant: Variant
    params: ModelParams
    order: int
    payoff_coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.variant is Variant.STANDARD:
            raise DomainError("spectral solutions exist only for sub and supra")
        coeffs = np.array(self.payoff_coeffs, dtype=float)
        if coeffs.shape != (self.order + 1,):
            raise ValueError(f"expected {self.order + 1} coefficients, got {coeffs.shape}")
        if not np.all(np.isfinite(coeffs)):
            raise ValueError("coefficients must be finite")
        coeffs.setflags(write=False)
        object.__setattr__(self, "payoff_coeffs", coeffs)

    @property
    def coeffs(self):
        """Series coefficients ``c_0..c_N`` including ``exp(-r (n + c) T)``."""
        n = np.arange(self.order + 1)
        shift = self.variant.shift
        return self.payoff_coeffs * np.exp(-self.params.r * (n + shift) * self.params.maturity)


def _sub_scale(params):
    # 4 r^2 / sigma^4 = (2 r / sigma^2)^2
    return params.rate_ratio ** 2


def sub_payoff_coeff_closed(m, params):
    """Closed-form ``A_m`` for the sub variant."""
    r, sig2, K = params.r, params.sigma ** 2, params.strike
    z = params.rate_ratio * K
    hyp = hyper_1_negm_2_2(m, z)
    bracket = (-2 * K * hyp * r * m ** 2
               - 6 * K * hyp * r * m
               - 4 * K * hyp * r
               - laguerre_plain(m, z) * sig2 * m
               - laguerre_plain(m, z) * sig2
               + laguerre_assoc(m, 1, z) * sig2
               + 2 * laguerre_assoc(m, 1, z) * K * r)
    return -2.0 * bracket * K * r / ((m + 2) * sig2 ** 2)


def sub_payoff_coeffs_closed(order, params):
    """Vector of closed-form ``A_0..A_order``; O(order) using Laguerre tables.

    Uses ``2F2(1,-m;2,2;z) = (1 - L_{m+1}(z)) / ((m+1) z)`` for every index,
    so the hypergeometric factor never needs its cancelling term sum.
    """
    r, sig2, K = params.r, params.sigma ** 2, params.strike
    z = params.rate_ratio * K
    m = np.arange(order + 1)
    l0 = laguerre_table(order + 1, 0, z)
    l1 = laguerre_table(order, 1, z)
    bracket = (-(m + 2) * sig2 * (1.0 - l0[1:])
               - (m + 1) * sig2 * l0[:-1]
               + (sig2 + 2 * K * r) * l1)
    return -2.0 * bracket * K * r / ((m + 2) * sig2 ** 2)


def coeff_sub_closed(m, params):
    """Series coefficient ``c_m`` of the sub variant from its closed form."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    return sub_payoff_coeff_closed(m, params) * math.exp(-params.r * (m + 2) * params.maturity)


def sub_payoff_coeffs_quadrature(order, params, tol=DEFAULT_TOL):
    """``A_0..A_order`` from ``(4r^2/sigma^4) int_0^K (K - S) L_m^1(2rS/sigma^2) dS``."""
    K, a = params.strike, params.rate_ratio

    def integrand(s):
        return ((K - s) * laguerre_table(order, 1, a * s)).T

    pieces = max(1, int(math.sqrt((order + 1) * a * K)))
    res = integrate_finite(integrand, 0.0, K, tol, initial=pieces)
    return _sub_scale(params) * np.atleast_1d(res.value)


def coeff_sub_quadrature(m, params, tol=DEFAULT_TOL):
    """Series coefficient ``c_m`` of the sub variant by direct quadrature."""
    if m < 0:
        raise DomainError("m must be nonnegative")
    K, a = params.strike, params.rate_ratio
    pieces = max(1, int(math.sqrt((m + 1) * a * K)))
    res = integrate_finite(lambda s: (K - s) * laguerre_assoc(m, 1, a * s),
                           0.0, K, tol, initial=pieces)
    return _sub_scale(params) * res.value * math.exp(-params.r * (m + 2) * params.maturity)


def _supra_cut(order, u0):
    # Past this point u^(n+1) e^(-u) / n! is far below any tolerance for n <= order.
    return max(u0, 0.0) + 8.0 * (order + 1) + 200.0


def supra_payoff_coeffs(order, params, tol=DEFAULT_TOL):
    """``A_0..A_order`` for the supra variant.

    With ``u = 2r / (sigma^2 S)`` the payoff projection becomes
    ``A_n = 1/(n+1) * (n+1) * int_{u0}^inf (K - b/u) L_n^1(u) u e^{-u} du`` with
    ``b = 2r/sigma^2`` and ``u0 = b / K``; the ``1/(n+1)`` of the
    eigenfunction and the ``n+1`` of the norm cancel. The weight ``e^{-u}``
    is folded into the Laguerre recurrence so nothing overflows.
    """
    K, b = params.strike, params.rate_ratio
    u0 = b / K

    def integrand(u):
        logw = np.log(u) - u
        return ((K - b / u) * laguerre_table(order, 1, u, log_weight=logw)).T

    cut = _supra_cut(order, u0)
    pieces = max(4, 2 * (order + 1))
    body = integrate_finite(integrand, u0, cut, tol, initial=pieces)
    tail = integrate_semiinfinite(integrand, cut, tol, scale=4.0 * (order + 1) + 10.0)
    return np.atleast_1d(body.value + tail.value)


def supra_payoff_coeffs_direct(order, params, tol=DEFAULT_TOL, eps=None):
    """Supra ``A_n`` by integrating in the price variable over ``[eps, K]``.

    ``b^2 int_eps^K (K - S) L_n^1(b/S) exp(-b/S) / S^3 dS``. The factor
    ``exp(-b/S)/S^3`` is evaluated in log form so it underflows to exactly 0
    near ``S = 0``. Independent of the substituted route, used to check it.
    """
    K, b = params.strike, params.rate_ratio
    if eps is None:
        eps = b / _supra_cut(order, b / K)

    def integrand(s):
        logw = -b / s - 3.0 * np.log(s)
        return ((K - s) * laguerre_table(order, 1, b / s, log_weight=logw)).T

    # Geometric breakpoints: features scale like S^2 / b near the origin.
    edges = np.unique(np.concatenate([np.geomspace(eps, K, 4 * (order + 1) + 8)]))
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        total = total + integrate_finite(integrand, lo, hi, tol).value
    return b ** 2 * np.atleast_1d(total)


def coeff_supra(n, params, quad_tol=DEFAULT_TOL):
    """Series coefficient ``c_n`` of the supra variant."""
    if n < 0:
        raise DomainError("n must be nonnegative")
    if quad_tol <= 0:
        raise ValueError("quad_tol must be positive")
    a_n = supra_payoff_coeffs(n, params, quad_tol)[n]
    return a_n * math.exp(-params.r * (n + 1) * params.maturity)


def build_spectral(variant, params, order, tol=DEFAULT_TOL):
    """Assemble the truncated spectral solution of the given order.

    Sub coefficients come from the closed form, spot-checked against
    quadrature at ``m = 0, order // 2, order``; a mismatch raises
    :class:`QuadratureError`.
    """
    variant = Variant.parse(variant)
    if order < 0:
        raise DomainError("order must be nonnegative")
    if variant is Variant.SUB:
        coeffs = sub_payoff_coeffs_closed(order, params)
        for m in sorted({0, order // 2, order}):
            check = coeff_sub_quadrature(m, params, tol) * math.exp(
                params.r * (m + 2) * params.maturity)
            if abs(check - coeffs[m]) > SPOT_CHECK_RTOL * max(1.0, abs(coeffs[m])):
                raise QuadratureError(
                    f"sub coefficient {m}: closed form {coeffs[m]!r} vs quadrature {check!r}")
    elif variant is Variant.SUPRA:
        coeffs = supra_payoff_coeffs(order, params, tol)
    else:
        raise DomainError("the standard variant has no spectral solution")
    return SpectralSolution(variant, params, order, coeffs)
