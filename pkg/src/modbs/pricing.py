"""Payoffs, Black-Scholes closed forms and evaluation of spectral series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.special import erf

from .coefficients import SpectralSolution
from .errors import DomainError
from .models import EvalPoint, ModelParams, Variant
from .specfun import compensated_sum, laguerre_table_scaled


@dataclass(frozen=True)
class PricingResult:
    value: float
    terms_used: int
    tail_estimate: float


def payoff_put(s, strike):
    """``K - s`` for ``s < K``, else 0 (zero at ``s == K``)."""
    s = np.asarray(s, dtype=float)
    out = np.where(s < strike, strike - s, 0.0)
    return float(out) if out.ndim == 0 else out


def payoff_call(s, strike):
    """``s - K`` for ``s >= K``, else 0."""
    s = np.asarray(s, dtype=float)
    out = np.where(s >= strike, s - strike, 0.0)
    return float(out) if out.ndim == 0 else out


def _bs_parts(t, s, params):
    t = np.asarray(t, dtype=float)
    s = np.asarray(s, dtype=float)
    tau = params.maturity - t
    if np.any(tau <= 0):
        raise DomainError("closed forms need t < T; use the payoff at maturity")
    if np.any(s < 0):
        raise DomainError("s must be nonnegative")
    sig, r, K = params.sigma, params.r, params.strike
    den = sig * np.sqrt(tau)
    with np.errstate(divide="ignore"):
        log_m = np.log(s / K)
    e1 = erf(np.sqrt(2.0) * (log_m + (r + 0.5 * sig ** 2) * tau) / (2.0 * den))
    e2 = erf(np.sqrt(2.0) * (log_m + (r - 0.5 * sig ** 2) * tau) / (2.0 * den))
    return s, K * np.exp(-r * tau), e1, e2


def bs_put(t, s, params):
    """Standard Black-Scholes European put at time ``t`` and price ``s``.

    Accepts scalars or broadcastable arrays; ``s = 0`` yields the limit
    ``K exp(-r (T - t))``.
    """
    s, disc, e1, e2 = _bs_parts(t, s, params)
    out = -s * (0.5 - 0.5 * e1) + disc * (0.5 - 0.5 * e2)
    return float(out) if np.ndim(out) == 0 else out


def bs_call(t, s, params):
    """Standard Black-Scholes European call."""
    s, disc, e1, e2 = _bs_parts(t, s, params)
    out = s * (0.5 + 0.5 * e1) - disc * (0.5 + 0.5 * e2)
    return float(out) if np.ndim(out) == 0 else out


def series_terms(solution: SpectralSolution, t, s):
    """Individual series terms, shape ``(order + 1,) + broadcast(t, s).shape``.

    Term ``n`` is ``A_n exp(-r (n + c)(T - t)) F_n(s)``; the eigenfunction's
    polynomial, its exponential damping and the time factor are combined in
    log space before exponentiating, which also maps deep out-of-the-money
    underflow to exact zeros.
    """
    params = solution.params
    t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
    if np.any(t > params.maturity):
        raise DomainError("t must not exceed the maturity")
    tau = params.maturity - t
    n = np.arange(solution.order + 1).reshape((-1,) + (1,) * t.ndim)
    a = params.rate_ratio
    with np.errstate(divide="ignore"):
        if solution.variant is Variant.SUB:
            if np.any(s < 0):
                raise DomainError("sub series needs s >= 0")
            x = a * s
            log_w = np.log(s) - x
        else:
            if np.any(s <= 0):
                raise DomainError("supra series is undefined at s = 0")
            x = a / s
            log_w = np.zeros_like(s)
    mant, logs = laguerre_table_scaled(solution.order, 1, x)
    expo = logs + log_w - params.r * (n + solution.variant.shift) * tau
    weight = (solution.payoff_coeffs.reshape(n.shape) / (n + 1)) * mant
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        terms = weight * np.exp(expo)
    return np.where(weight == 0.0, 0.0, terms)


def price_curve(solution: SpectralSolution, t, s):
    """Vectorised series value over broadcast ``(t, s)``."""
    out = compensated_sum(series_terms(solution, t, s), axis=0)
    return out


def price_spectral(solution: SpectralSolution, point: EvalPoint) -> PricingResult:
    """Value of the truncated series at one point, with diagnostics."""
    point.check(solution.params)
    terms = series_terms(solution, point.t, point.s)
    value = float(compensated_sum(terms, axis=0))
    if not np.isfinite(value):
        raise DomainError(f"series value is not finite at {point}")
    return PricingResult(value=value, terms_used=solution.order + 1,
                         tail_estimate=float(abs(terms[-1])))
