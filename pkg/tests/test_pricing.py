import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modbs.coefficients import build_spectral
from modbs.errors import DomainError
from modbs.models import DEFAULT_PARAMS, EvalPoint, ModelParams, eigenfunction
from modbs.pricing import (
    bs_call,
    bs_put,
    payoff_call,
    payoff_put,
    price_curve,
    price_spectral,
    series_terms,
)


@pytest.fixture(scope="module")
def sub20():
    return build_spectral("sub", DEFAULT_PARAMS, 20)


@pytest.fixture(scope="module")
def sub2000():
    return build_spectral("sub", DEFAULT_PARAMS, 2000)


@pytest.fixture(scope="module")
def supra300():
    return build_spectral("supra", DEFAULT_PARAMS, 300)


def test_payoff_examples():
    assert payoff_put(2.0, 3.0) == 1.0
    assert payoff_put(3.0, 3.0) == 0.0
    assert payoff_put(4.0, 3.0) == 0.0
    assert payoff_call(4.5, 3.0) == 1.5
    np.testing.assert_array_equal(payoff_put(np.array([0.0, 1.0, 5.0]), 3.0), [3.0, 2.0, 0.0])


def test_bs_put_limits(params):
    assert bs_put(0.0, 1e6, params) < 1e-300
    assert bs_put(0.0, 0.0, params) == pytest.approx(3 * math.exp(-0.15), rel=1e-15)
    assert bs_put(0.0, 1e-12, params) == pytest.approx(3 * math.exp(-0.15), rel=1e-12)


def test_bs_reference_value(params):
    # Textbook value with sigma=0.25, r=0.03, K=3, T=5 at S=3.
    assert bs_put(0.0, 3.0, params) == pytest.approx(0.4268726972093875, rel=1e-12)


@pytest.mark.parametrize("s", [0.5, 3.0, 9.0])
def test_parity_examples(s, params):
    lhs = bs_call(1.0, s, params) - bs_put(1.0, s, params)
    rhs = s - params.strike * math.exp(-params.r * 4.0)
    assert lhs == pytest.approx(rhs, abs=1e-13 * max(s, params.strike))


@settings(max_examples=200)
@given(
    sigma=st.floats(0.1, 0.5), r=st.floats(0.01, 0.1), strike=st.floats(1, 10),
    maturity=st.floats(1, 10), frac=st.floats(0, 0.99), s=st.floats(0, 30),
)
def test_parity_property(sigma, r, strike, maturity, frac, s):
    p = ModelParams(sigma, r, strike, maturity)
    t = frac * maturity
    disc = strike * math.exp(-r * (maturity - t))
    diff = bs_call(t, s, p) - bs_put(t, s, p) - (s - disc)
    assert abs(diff) <= 1e-12 * max(s, disc)


def test_bs_put_monotone_and_bounded(params):
    s = np.linspace(0, 20, 2001)
    v = bs_put(1.0, s, params)
    assert np.all(np.diff(v) <= 1e-15)
    disc = params.strike * math.exp(-params.r * 4.0)
    assert np.all(v >= np.maximum(disc - s, 0) - 1e-14) and np.all(v <= disc + 1e-14)


def test_closed_forms_reject_maturity(params):
    with pytest.raises(DomainError):
        bs_put(5.0, 2.0, params)
    with pytest.raises(DomainError):
        bs_call(0.0, -1.0, params)


def test_sub_price_at_zero_is_zero(sub20):
    for t in (0.0, 3.0, 5.0):
        assert price_spectral(sub20, EvalPoint(t, 0.0)).value == 0.0


def test_sub_terminal_reproduces_payoff_away_from_zero(sub2000):
    res = price_spectral(sub2000, EvalPoint(5.0, 1.5))
    assert abs(res.value - 1.5) < 0.05 * 3.0
    assert res.terms_used == 2001 and res.tail_estimate >= 0


def test_supra_terminal_reproduces_payoff(supra300):
    res = price_spectral(supra300, EvalPoint(5.0, 1.5))
    assert abs(res.value - 1.5) < 0.05 * 3.0


def test_supra_rejects_zero_price(supra300):
    with pytest.raises(DomainError):
        price_spectral(supra300, EvalPoint(1.0, 0.0))


def test_pricing_rejects_times_past_maturity(sub20):
    with pytest.raises(DomainError):
        price_spectral(sub20, EvalPoint(5.01, 1.0))


def test_terminal_matches_plain_sum(sub20, supra300):
    for sol in (sub20, supra300):
        s = 2.2
        plain = sum(a * eigenfunction(sol.variant, n, s, sol.params)
                    for n, a in enumerate(sol.payoff_coeffs))
        assert price_spectral(sol, EvalPoint(5.0, s)).value == pytest.approx(plain, rel=1e-12, abs=1e-14)


def test_fused_exponent_avoids_overflow(sub2000):
    # exp(r (n+2) T) alone overflows nothing here, but e^{-r n tau} * e^{r n T}
    # split apart would lose all digits for n=2000; the fused path stays finite.
    v = price_curve(sub2000, np.zeros(50), np.linspace(0, 6, 50))
    assert np.all(np.isfinite(v))


def test_partial_sums_settle(sub2000):
    terms = series_terms(sub2000, 0.0, 2.0)
    partial = np.cumsum(terms)
    assert np.max(np.abs(partial[-500:] - partial[-1])) < 1e-6


def test_price_curve_vectorized_matches_pointwise(sub20):
    s = np.linspace(0, 6, 13)
    vec = price_curve(sub20, np.full_like(s, 1.0), s)
    pts = [price_spectral(sub20, EvalPoint(1.0, x)).value for x in s]
    np.testing.assert_allclose(vec, pts, rtol=1e-14, atol=1e-16)


def test_ordering_at_converged_orders(sub2000, supra300, params):
    for t in (0.0, 3.0):
        s = np.linspace(0.05, 6, 120)
        sub = price_curve(sub2000, np.full_like(s, t), s)
        supra = price_curve(supra300, np.full_like(s, t), s)
        bs = bs_put(t, s, params)
        assert np.all(sub - bs <= 0.02 * params.strike)
        assert np.all(bs - supra <= 0.02 * params.strike)


def test_deep_out_of_the_money(sub20, supra300):
    assert abs(price_spectral(sub20, EvalPoint(0.0, 300.0)).value) < 1e-80
    # Supra eigenfunctions tend to 1, so the far-field value is the sum of the
    # time-0 coefficients rather than zero.
    far = price_spectral(supra300, EvalPoint(0.0, 1e9)).value
    assert math.isfinite(far)
    assert far == pytest.approx(float(np.sum(supra300.coeffs)), rel=1e-6)
