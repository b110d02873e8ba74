"""Crank-Nicolson finite differences for the standard, sub and supra PDEs.

The solver marches in time-to-maturity ``tau = T - t`` from the put payoff.
The first step is replaced by two implicit-Euler half steps (Rannacher
start-up) to damp the oscillation the payoff kink would otherwise excite.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded

from .coefficients import SpectralSolution
from .errors import DomainError, InstabilityError
from .models import ModelParams, Variant
from .pricing import payoff_put, price_curve


class Boundary(enum.Enum):
    DIRICHLET = "dirichlet"
    SPECTRAL = "spectral"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        aliases = {"dirichlet": cls.DIRICHLET, "dirichlet-discounted-strike": cls.DIRICHLET,
                   "spectral": cls.SPECTRAL, "spectral-matched": cls.SPECTRAL}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise DomainError(f"unknown boundary choice {value!r}") from None


@dataclass(frozen=True)
class GridSolution:
    variant: Variant
    params: ModelParams
    s_nodes: np.ndarray
    t_nodes: np.ndarray
    values: np.ndarray  # shape (len(t_nodes), len(s_nodes))
    bc_spec: dict = field(default_factory=dict)

    def at_time(self, t):
        """Row of values at the grid time closest to ``t``."""
        i = int(np.argmin(np.abs(self.t_nodes - t)))
        return self.values[i]

    def interpolate(self, t, s):
        """Linear interpolation in ``s`` on the time row nearest ``t``."""
        return np.interp(s, self.s_nodes, self.at_time(t))


def default_s_max(variant, strike):
    variant = Variant.parse(variant)
    return {Variant.STANDARD: 12.0, Variant.SUB: 6.0, Variant.SUPRA: 4.0}[variant] * strike


def _operator(s, variant, params):
    """Tridiagonal coefficients of ``L V = D V_SS + r s V_S - r V`` on interior nodes."""
    h_lo = s[1:-1] - s[:-2]
    h_hi = s[2:] - s[1:-1]
    si = s[1:-1]
    diff = 0.5 * params.sigma ** 2 * si ** variant.power
    drift = params.r * si
    denom = h_lo + h_hi
    lower = (2 * diff - drift * h_hi) / (h_lo * denom)
    upper = (2 * diff + drift * h_lo) / (h_hi * denom)
    diag = -2 * diff / (h_lo * h_hi) + drift * (h_hi - h_lo) / (h_lo * h_hi) - params.r
    return lower, diag, upper


def solve_fd(variant, params, s_max=None, n_s=800, n_t=800, bc="dirichlet", *,
             spectral: SpectralSolution | None = None, log_grid=False):
    """Solve the variant's PDE backward from the put payoff.

    Parameters
    ----------
    variant : Variant or str
    params : ModelParams
    s_max : float, optional
        Far price boundary; defaults to 12K / 6K / 4K for standard / sub / supra.
    n_s, n_t : int
        Number of price and time intervals (each at least 16).
    bc : {"dirichlet", "spectral"}
        ``dirichlet``: ``V(t, 0) = K exp(-r (T - t))`` and ``V(t, s_max) = 0``.
        ``spectral``: boundary rows copied from ``spectral``. The supra series
        is undefined at ``s = 0``, so its lower row keeps the Dirichlet value.
    spectral : SpectralSolution, optional
        Required with ``bc="spectral"``.
    log_grid : bool
        Geometric price spacing from ``1e-4 s_max`` (plus the node 0).
    """
    variant = Variant.parse(variant)
    bc = Boundary.parse(bc)
    if n_s < 16 or n_t < 16:
        raise DomainError("need at least 16 intervals in each direction")
    if s_max is None:
        s_max = default_s_max(variant, params.strike)
    if not s_max > params.strike:
        raise DomainError("s_max must exceed the strike")
    if bc is Boundary.SPECTRAL:
        if spectral is None:
            raise DomainError("spectral boundary needs a SpectralSolution")
        if spectral.variant is not variant or spectral.params != params:
            raise DomainError("spectral solution does not match the requested model")

    if log_grid:
        s = np.concatenate([[0.0], np.geomspace(1e-4 * s_max, s_max, n_s)])
    else:
        s = np.linspace(0.0, s_max, n_s + 1)
    T, r, K = params.maturity, params.r, params.strike
    t_nodes = np.linspace(0.0, T, n_t + 1)
    lower, diag, upper = _operator(s, variant, params)

    dt = T / n_t
    # Boundary rows at tau = dt/2 (start-up half step) and every full step.
    taus = np.concatenate([[0.5 * dt], dt * np.arange(1, n_t + 1)])
    lefts = K * np.exp(-r * taus)
    rights = np.zeros_like(taus)
    if bc is Boundary.SPECTRAL:
        rights = price_curve(spectral, T - taus, np.full_like(taus, s[-1]))
        if variant is not Variant.SUPRA:
            lefts = price_curve(spectral, T - taus, np.full_like(taus, s[0]))

    def boundary(tau):
        i = int(np.argmin(np.abs(taus - tau)))
        return lefts[i], rights[i]

    def step(v, dt, theta, tau_new):
        lv = lower * v[:-2] + diag * v[1:-1] + upper * v[2:]
        rhs = v[1:-1] + (1 - theta) * dt * lv
        left, right = boundary(tau_new)
        rhs[0] += theta * dt * lower[0] * left
        rhs[-1] += theta * dt * upper[-1] * right
        ab = np.zeros((3, len(diag)))
        ab[0, 1:] = -theta * dt * upper[:-1]
        ab[1] = 1.0 - theta * dt * diag
        ab[2, :-1] = -theta * dt * lower[1:]
        out = np.empty_like(v)
        out[1:-1] = solve_banded((1, 1), ab, rhs)
        out[0], out[-1] = left, right
        return out

    values = np.empty((n_t + 1, len(s)))
    v = payoff_put(s, K)
    values[n_t] = v
    for j in range(n_t):
        tau = j * dt
        if j == 0:
            v = step(v, 0.5 * dt, 1.0, tau + 0.5 * dt)
            v = step(v, 0.5 * dt, 1.0, tau + dt)
        else:
            v = step(v, dt, 0.5, tau + dt)
        if not np.all(np.isfinite(v)):
            raise InstabilityError(f"non-finite values after step {j + 1}")
        values[n_t - j - 1] = v

    bc_spec = {
        "choice": bc.value,
        "lower": "spectral" if bc is Boundary.SPECTRAL and variant is not Variant.SUPRA
        else "K*exp(-r*(T-t))",
        "upper": "spectral" if bc is Boundary.SPECTRAL else "0",
        "s_max": float(s_max),
        "grid": "log" if log_grid else "uniform",
        "startup": "rannacher(2 implicit half-steps)",
    }
    return GridSolution(variant, params, s, t_nodes, values, bc_spec)


def pde_residual_of_spectral(solution: SpectralSolution, point, h_s=1e-3, h_t=1e-3):
    """Central-difference residual of the full PDE applied to the series.

    ``(V_t + r s V_S + 1/2 sigma^2 s^p V_SS - r V) / max(1, |r V|)``.
    """
    params = solution.params
    t, s = float(point.t), float(point.s)
    if not (h_s < s and t + h_t < params.maturity):
        raise DomainError("point must be interior: h_s < s and t + h_t < T")
    ts = np.array([t, t, t, t + h_t, t - h_t])
    ss = np.array([s - h_s, s, s + h_s, s, s])
    v_m, v0, v_p, v_tp, v_tm = price_curve(solution, ts, ss)
    v_t = (v_tp - v_tm) / (2 * h_t)
    v_s = (v_p - v_m) / (2 * h_s)
    v_ss = (v_p - 2 * v0 + v_m) / h_s ** 2
    p = solution.variant.power
    res = v_t + params.r * s * v_s + 0.5 * params.sigma ** 2 * s ** p * v_ss - params.r * v0
    return float(res / max(1.0, abs(params.r * v0)))
