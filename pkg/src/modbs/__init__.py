"""Spectral (associated-Laguerre) pricing of European puts under modified Black-Scholes PDEs."""

from .coefficients import SpectralSolution, build_spectral, coeff_sub_closed, coeff_sub_quadrature, coeff_supra
from .errors import ConfigError, DomainError, InstabilityError, QuadratureError
from .models import DEFAULT_PARAMS, EvalPoint, ModelParams, Variant, eigenfunction, eigenvalue, ode_residual
from .oracle_fd import GridSolution, pde_residual_of_spectral, solve_fd
from .pricing import PricingResult, bs_call, bs_put, payoff_call, payoff_put, price_curve, price_spectral

__all__ = [
    "ConfigError", "DomainError", "EvalPoint", "GridSolution", "InstabilityError",
    "ModelParams", "DEFAULT_PARAMS", "PricingResult", "QuadratureError", "SpectralSolution",
    "Variant", "bs_call", "bs_put", "build_spectral", "coeff_sub_closed", "coeff_sub_quadrature",
    "coeff_supra", "eigenfunction", "eigenvalue", "ode_residual", "payoff_call", "payoff_put",
    "pde_residual_of_spectral", "price_curve", "price_spectral", "solve_fd",
]
