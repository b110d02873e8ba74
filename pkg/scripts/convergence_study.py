"""Truncation-order and grid-refinement study at the default parameters.

Prints, for each variant, the RMS payoff error at maturity against the order N,
the worst excess over Black-Scholes at t in {0, 3} against N, and the
Crank-Nicolson error against the closed-form put under grid doubling.

    python3 scripts/convergence_study.py
"""

import numpy as np

from modbs import validation
from modbs.coefficients import build_spectral
from modbs.models import DEFAULT_PARAMS, Variant
from modbs.pricing import bs_put, price_curve

ORDERS = {Variant.SUB: (10, 20, 50, 100, 300, 1000, 2000),
          Variant.SUPRA: (10, 20, 50, 100, 200, 300)}


def ordering_excess(variant, order, times=(0.0, 3.0)):
    p = DEFAULT_PARAMS
    s = np.linspace(0.1, 6.0, 200)
    sol = build_spectral(variant, p, order)
    sign = 1.0 if variant is Variant.SUB else -1.0
    return max(float(np.max(sign * (price_curve(sol, t, s) - bs_put(t, s, p)))) for t in times)


def main():
    print("variant,order,rms_at_maturity,ordering_excess")
    for variant, orders in ORDERS.items():
        for n in orders:
            rms = validation.rms_at_maturity(variant, n)
            print(f"{variant.value},{n},{rms:.6g},{ordering_excess(variant, n):.6g}")
    print()
    print("grid,fd_error")
    for n in (100, 200, 400, 800, 1600):
        print(f"{n},{validation.fd_standard_error(n):.6g}")


if __name__ == "__main__":
    main()
