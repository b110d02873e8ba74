import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

from modbs.errors import DomainError
from modbs.models import (
    DEFAULT_PARAMS,
    EvalPoint,
    ModelParams,
    Variant,
    eigenfunction,
    eigenvalue,
    ode_residual,
    random_params,
)


def test_eigenvalue_examples(params):
    assert eigenvalue("sub", 0, params) == pytest.approx(-0.06, abs=1e-15)
    assert eigenvalue("supra", 0, params) == pytest.approx(-0.03, abs=1e-15)
    assert eigenvalue(Variant.SUB, 3, params) == pytest.approx(-0.15, abs=1e-15)


def test_standard_has_no_spectrum(params):
    with pytest.raises(DomainError):
        eigenvalue("standard", 0, params)
    with pytest.raises(DomainError):
        eigenfunction("standard", 0, 1.0, params)


@pytest.mark.parametrize("variant", ["sub", "supra"])
def test_eigenvalue_strictly_decreasing(variant, params):
    lams = [eigenvalue(variant, n, params) for n in range(100)]
    assert all(b < a for a, b in zip(lams, lams[1:]))


def test_eigenfunction_examples(params):
    assert eigenfunction("sub", 7, 0.0, params) == 0.0
    # 2 r / sigma^2 = 0.96, so F_0(1) = e^{-0.96}
    with mp.workdps(30):
        ref = float(mp.e ** mp.mpf("-0.96"))
    assert eigenfunction("sub", 0, 1.0, params) == pytest.approx(ref, rel=1e-14)
    assert ref == pytest.approx(0.3829, abs=5e-5)
    assert eigenfunction("supra", 0, 5.0, params) == 1.0


def test_supra_rejects_zero_price(params):
    with pytest.raises(DomainError):
        eigenfunction("supra", 2, 0.0, params)
    with pytest.raises(DomainError):
        eigenfunction("sub", 2, -1.0, params)


def test_ode_residual_examples(params):
    assert abs(ode_residual("sub", 0, 1.0, params)) < 1e-10
    assert abs(ode_residual("supra", 5, 2.0, params)) < 1e-10
    assert abs(ode_residual("sub", 20, 0.5, params)) < 1e-9


def test_ode_residual_detects_wrong_eigenvalue(params):
    # Swap the shifts: the sub eigenfunction with the supra eigenvalue must fail.
    from modbs import models

    s = np.geomspace(0.1, 5, 12)
    good = np.abs(ode_residual("sub", 4, s, params))
    orig = models.eigenvalue
    try:
        models.eigenvalue = lambda v, n, p: -(n + 1) * p.r
        bad = np.abs(ode_residual("sub", 4, s, params))
    finally:
        models.eigenvalue = orig
    assert good.max() < 1e-12 and bad.max() > 1e-3


@pytest.mark.parametrize("variant", ["sub", "supra"])
def test_residual_property_on_log_grid(variant, params):
    s = np.geomspace(0.01, 20, 30)
    worst = max(np.max(np.abs(ode_residual(variant, n, s, params))) for n in range(51))
    assert worst < 1e-9


@given(n=st.integers(0, 50), s=st.floats(0.01, 20))
def test_residual_random_points(n, s):
    for variant in ("sub", "supra"):
        assert abs(ode_residual(variant, n, s, DEFAULT_PARAMS)) < 1e-9


@pytest.mark.parametrize("n", [0, 1, 5, 30, 100])
def test_sub_eigenfunction_bounded_and_decaying(n, params):
    s = np.linspace(0, 1e4, 20001)
    f = eigenfunction("sub", n, s, params)
    assert np.all(np.isfinite(f))
    assert abs(f[-1]) < 1e-100
    assert np.max(np.abs(f[s > 500])) < 1e-100


@pytest.mark.parametrize("n", [0, 3, 40])
def test_supra_eigenfunction_tends_to_one(n, params):
    assert eigenfunction("supra", n, 1e12, params) == pytest.approx(1.0, rel=1e-9)


def test_params_validation():
    with pytest.raises(DomainError):
        ModelParams(sigma=0.0, r=0.03, strike=3, maturity=5)
    with pytest.raises(DomainError):
        ModelParams(sigma=0.2, r=0.03, strike=-3, maturity=5)
    with pytest.raises(DomainError):
        ModelParams(sigma=0.2, r=float("nan"), strike=3, maturity=5)
    assert DEFAULT_PARAMS.rate_ratio == pytest.approx(0.96)


def test_eval_point_check(params):
    EvalPoint(5.0, 0.0).check(params)
    with pytest.raises(DomainError):
        EvalPoint(5.5, 1.0).check(params)
    with pytest.raises(DomainError):
        EvalPoint(1.0, -0.1).check(params)


def test_variant_parse():
    assert Variant.parse("SUB") is Variant.SUB
    assert Variant.parse(Variant.SUPRA) is Variant.SUPRA
    assert [v.power for v in Variant] == [2, 1, 3]
    with pytest.raises(DomainError):
        Variant.parse("cev")


def test_random_params_ranges(rng):
    for p in random_params(rng, 50):
        assert 0.1 <= p.sigma <= 0.5 and 0.01 <= p.r <= 0.1
        assert 1 <= p.strike <= 10 and 1 <= p.maturity <= 10
