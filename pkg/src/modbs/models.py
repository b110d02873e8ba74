"""Model definitions for the three Black-Scholes-type PDEs.

Every variant shares the PDE

    V_t + r S V_S + 1/2 sigma^2 S^p V_SS - r V = 0

with ``p = 2`` (standard), ``p = 1`` (sub, volatility ``sigma sqrt(S)``) and
``p = 3`` (supra, volatility ``sigma S^(3/2)``). The sub and supra variants
separate as ``V = exp(-lambda t) F(S)`` with a discrete Laguerre spectrum.

Boundary remarks
----------------
* Each sub eigenfunction carries a factor ``S``, so every sub series has
  ``V(t, 0) = 0`` even though the put payoff is ``K`` there.
* Supra eigenfunctions are ``L_n^1(2r / (sigma^2 S)) / (n + 1)``; they tend
  to 1 as ``S -> inf`` and are undefined at ``S = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .specfun import laguerre_assoc


class Variant(enum.Enum):
    STANDARD = "standard"
    SUB = "sub"
    SUPRA = "supra"

    @property
    def power(self):
        """Exponent ``p`` of ``S`` in the diffusion coefficient."""
        return {"standard": 2, "sub": 1, "supra": 3}[self.value]

    @property
    def shift(self):
        """Offset ``c`` in the eigenvalue ``lambda_n = -(n + c) r``."""
        if self is Variant.STANDARD:
            raise DomainError("the standard model has no discrete spectrum here")
        return 2 if self is Variant.SUB else 1

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            choices = ", ".join(v.value for v in cls)
            raise DomainError(f"unknown variant {value!r} (choose from {choices})") from None


@dataclass(frozen=True)
class ModelParams:
    """Volatility scale, risk-free rate, strike and maturity."""

    sigma: float
    r: float
    strike: float
    maturity: float

    def __post_init__(self):
        for name in ("sigma", "r", "strike", "maturity"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                raise DomainError(f"{name} must be a positive finite number, got {value!r}")

    @property
    def rate_ratio(self):
        """``2 r / sigma^2``, the scale of every Laguerre argument."""
        return 2.0 * self.r / self.sigma ** 2


#: Parameter set used for all of the reference experiments.
DEFAULT_PARAMS = ModelParams(sigma=0.25, r=0.03, strike=3.0, maturity=5.0)


@dataclass(frozen=True)
class EvalPoint:
    t: float
    s: float

    def check(self, params):
        if not (0.0 <= self.t <= params.maturity):
            raise DomainError(f"t={self.t} outside [0, T={params.maturity}]")
        if not self.s >= 0.0:
            raise DomainError(f"s={self.s} must be nonnegative")
        return self


def random_params(rng, n):
    """Draw ``n`` parameter sets from the ranges used by the randomized checks."""
    out = []
    for _ in range(n):
        out.append(ModelParams(
            sigma=float(rng.uniform(0.1, 0.5)),
            r=float(rng.uniform(0.01, 0.1)),
            strike=float(rng.uniform(1.0, 10.0)),
            maturity=float(rng.uniform(1.0, 10.0)),
        ))
    return out


def _spectral(variant):
    variant = Variant.parse(variant)
    if variant is Variant.STANDARD:
        raise DomainError("eigen-structure is only defined for the sub and supra variants")
    return variant


def eigenvalue(variant, n, params):
    """``lambda_n``: ``-(n + 2) r`` for sub, ``-(n + 1) r`` for supra."""
    variant = _spectral(variant)
    if n < 0:
        raise DomainError("n must be nonnegative")
    return -(n + variant.shift) * params.r


def _argument(variant, s, params):
    s = np.asarray(s, dtype=float)
    if variant is Variant.SUB:
        if np.any(s < 0):
            raise DomainError("sub eigenfunctions need s >= 0")
        return params.rate_ratio * s
    if np.any(s <= 0):
        raise DomainError("supra eigenfunctions diverge at s = 0; need s > 0")
    return params.rate_ratio / s


def eigenfunction(variant, n, s, params):
    """Eigenfunction ``F_n(s)``.

    sub:   ``s exp(-u) L_n^1(u) / (n + 1)`` with ``u = 2 r s / sigma^2``
    supra: ``L_n^1(v) / (n + 1)`` with ``v = 2 r / (sigma^2 s)``
    """
    variant = _spectral(variant)
    x = _argument(variant, s, params)
    lag = laguerre_assoc(n, 1, x)
    if variant is Variant.SUB:
        out = np.asarray(s, dtype=float) * np.exp(-x) * lag / (n + 1)
    else:
        out = np.asarray(lag, dtype=float) / (n + 1)
    return float(out) if np.ndim(out) == 0 else out


def _lag_derivs(n, x):
    """``L_n^1``, its first and second derivative via ``d/dx L_n^k = -L_{n-1}^{k+1}``."""
    g = laguerre_assoc(n, 1, x)
    g1 = -laguerre_assoc(n - 1, 2, x) if n >= 1 else np.zeros_like(x)
    g2 = laguerre_assoc(n - 2, 3, x) if n >= 2 else np.zeros_like(x)
    return np.asarray(g), np.asarray(g1), np.asarray(g2)


def ode_residual(variant, n, s, params):
    """Relative residual of the separated ODE at the ``n``-th eigenpair.

    Evaluates ``-lambda F + r s F' + 1/2 sigma^2 s^p F'' - r F`` with exact
    Laguerre derivatives and divides by ``max(1, |lambda F|)``.
    """
    variant = _spectral(variant)
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0):
        raise DomainError("ode_residual needs s > 0")
    lam = eigenvalue(variant, n, params)
    a = params.rate_ratio
    r, sig2 = params.r, params.sigma ** 2
    x = _argument(variant, s, params)
    g, g1, g2 = _lag_derivs(n, x)
    if variant is Variant.SUB:
        e = np.exp(-x)
        F = x * e * g / a
        F1 = e * ((1 - x) * g + x * g1)
        F2 = a * e * ((x - 2) * g + 2 * (1 - x) * g1 + x * g2)
    else:
        F = g
        F1 = -(x ** 2 / a) * g1
        F2 = (2 * x ** 3 * g1 + x ** 4 * g2) / a ** 2
    F, F1, F2 = F / (n + 1), F1 / (n + 1), F2 / (n + 1)
    res = -lam * F + r * s * F1 + 0.5 * sig2 * s ** variant.power * F2 - r * F
    out = res / np.maximum(1.0, np.abs(lam * F))
    return float(out) if out.ndim == 0 else out
