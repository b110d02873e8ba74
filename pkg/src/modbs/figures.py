"""Curve datasets for the four reference figures and their CSV form."""

from __future__ import annotations

import io

import numpy as np

from .coefficients import build_spectral
from .config import RunConfig
from .models import Variant
from .pricing import bs_put, payoff_put, price_curve

FIGURES = ("fig1", "fig2", "fig3", "fig4")
TITLES = {
    "fig1": "sub series: V(t,S) and payoff",
    "fig2": "sub series vs Black-Scholes put",
    "fig3": "supra series: V(t,S) and payoff",
    "fig4": "supra series vs Black-Scholes put",
}


def _label(t):
    return f"{t:g}"


def _spectral_curve(sol, t, s):
    if sol.variant is Variant.SUPRA:
        s = s[s > 0]  # the supra series is undefined at S = 0
    return s, price_curve(sol, t, s)


def _bs_curve(t, s, params):
    if t >= params.maturity:
        return s, payoff_put(s, params.strike)
    return s, bs_put(t, s, params)


def figure_series(config: RunConfig):
    """Map each figure name to ``[(label, s, values), ...]`` in legend order."""
    p = config.params
    s = np.linspace(config.s_range[0], config.s_range[1], config.samples)
    payoff = ("payoff", s, payoff_put(s, p.strike))
    out = {}
    for variant, orders, spectral_fig, compare_fig in (
            (Variant.SUB, config.sub_orders, "fig1", "fig2"),
            (Variant.SUPRA, config.supra_orders, "fig3", "fig4")):
        low, high = orders
        sol_low = build_spectral(variant, p, low)
        sol_high = build_spectral(variant, p, high)
        name = variant.value
        curves = [(f"{name} t={_label(t)} N={low}", *_spectral_curve(sol_low, t, s))
                  for t in config.t_values]
        terminal = (f"{name} t={_label(p.maturity)} N={high}",
                    *_spectral_curve(sol_high, p.maturity, s))
        out[spectral_fig] = curves + [terminal, payoff]
        out[compare_fig] = curves + [(f"bs t={_label(t)}", *_bs_curve(t, s, p))
                                     for t in config.t_values] + [payoff]
    return {k: out[k] for k in FIGURES}


def series_csv(series):
    """Long-format CSV: ``s,series,value`` with shortest round-trip floats."""
    buf = io.StringIO()
    buf.write("s,series,value\n")
    for label, xs, ys in series:
        for x, y in zip(xs, ys):
            buf.write(f"{float(x)!r},{label},{float(y)!r}\n")
    return buf.getvalue()
