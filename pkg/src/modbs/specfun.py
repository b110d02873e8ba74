"""Laguerre polynomials, a terminating 2F2 sum and Kummer M at integer parameter.

All arguments used by the pricing code are nonnegative, which is the regime
where the upward three-term recurrence in the degree is stable.
"""

from __future__ import annotations

import math
from numbers import Integral

import numpy as np

from .errors import DomainError

# Rescaling threshold for the log-scaled recurrence.
_BIG = 1e150
_LOG_BIG = math.log(_BIG)


def _check_index(name, value):
    if isinstance(value, bool) or not isinstance(value, Integral):
        if isinstance(value, float) and value.is_integer():
            value = int(value)
        else:
            raise DomainError(f"{name} must be a nonnegative integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return int(value)


def _check_finite(x):
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("argument must be finite")
    return arr


def laguerre_assoc(n, k, x):
    """Associated Laguerre polynomial ``L_n^k(x)``.

    Parameters
    ----------
    n : int
        Degree, ``n >= 0``.
    k : int
        Order, ``k >= 0``.
    x : float or array_like
        Evaluation point(s); must be finite.

    Returns
    -------
    float or numpy.ndarray
        Same shape as ``x``.
    """
    n = _check_index("degree", n)
    k = _check_index("order", k)
    xa = _check_finite(x)
    prev = np.ones_like(xa)
    if n == 0:
        out = prev
    else:
        cur = (1.0 + k) - xa
        for j in range(1, n):
            prev, cur = cur, ((2 * j + 1 + k - xa) * cur - (j + k) * prev) / (j + 1)
        out = cur
    return float(out) if out.ndim == 0 else out


def laguerre_plain(n, x):
    """Ordinary Laguerre polynomial ``L_n(x) = L_n^0(x)``."""
    return laguerre_assoc(n, 0, x)


def laguerre_table_scaled(order, k, x):
    """All degrees ``0..order`` of ``L_n^k(x)`` in overflow-safe split form.

    Returns ``(mantissa, log_scale)``, both of shape ``(order + 1,) + x.shape``,
    with ``L_n^k(x) = mantissa[n] * exp(log_scale[n])``. The recurrence is
    rescaled whenever the running value exceeds 1e150, so arguments in the
    thousands (where ``L_n`` itself overflows a double) are representable.
    """
    order = _check_index("order", order)
    k = _check_index("k", k)
    xa = _check_finite(x)
    mant = np.empty((order + 1,) + xa.shape)
    logs = np.zeros((order + 1,) + xa.shape)
    prev = np.ones_like(xa)
    mant[0] = prev
    if order == 0:
        return mant, logs
    cur = (1.0 + k) - xa
    mant[1] = cur
    scale = np.zeros_like(xa)
    for j in range(1, order):
        prev, cur = cur, ((2 * j + 1 + k - xa) * cur - (j + k) * prev) / (j + 1)
        big = np.abs(cur) > _BIG
        if np.any(big):
            cur = np.where(big, cur / _BIG, cur)
            prev = np.where(big, prev / _BIG, prev)
            scale = scale + big * _LOG_BIG
        mant[j + 1] = cur
        logs[j + 1] = scale
    return mant, logs


def laguerre_table(order, k, x, log_weight=0.0):
    """``exp(log_weight) * L_n^k(x)`` for every ``n`` in ``0..order``.

    ``log_weight`` broadcasts against ``x``; use it to fold damping factors
    such as ``exp(-x)`` into the result before they can under- or overflow.
    Terms whose true magnitude is below the double range come back as 0.
    """
    mant, logs = laguerre_table_scaled(order, k, x)
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = mant * np.exp(logs + np.asarray(log_weight, dtype=float))
    return np.where(mant == 0.0, 0.0, out)


def hyper_1_negm_2_2_series(m, x):
    """Direct term list of ``2F2(1, -m; 2, 2; x)``, summed with ``math.fsum``.

    Term ``j`` is ``(-m)_j x^j / ((j+1)!)^2``; the series stops at ``j = m``.
    Cheap and exact-rounded in the sum, but the alternating terms cancel
    badly once ``m * x`` is large.
    """
    m = _check_index("m", m)
    x = float(_check_finite(x))
    term = 1.0
    terms = [term]
    for j in range(m):
        term *= (j - m) * x / ((j + 2) * (j + 2))
        terms.append(term)
    return math.fsum(terms), math.fsum(abs(t) for t in terms)


def hyper_1_negm_2_2(m, x):
    """Terminating hypergeometric sum ``2F2(1, -m; 2, 2; x)``.

    The ascending series is used while its terms stay well conditioned.
    When cancellation would cost more than four digits the value is taken
    from the exact identity ``2F2(1, -m; 2, 2; x) = (1 - L_{m+1}(x)) / ((m+1) x)``,
    which follows from ``d/dx [x 2F2] = M(-m, 2, x)`` and
    ``d/dx L_{m+1} = -L_m^1``.
    """
    m = _check_index("m", m)
    x = float(_check_finite(x))
    value, abs_sum = hyper_1_negm_2_2_series(m, x)
    if x == 0.0 or abs_sum <= 1e4 * abs(value):
        return value
    return (1.0 - laguerre_plain(m + 1, x)) / ((m + 1) * x)


def kummer_m_reduced(n, x):
    """Kummer ``M(-n, 2, x)`` for integer ``n >= 0``, as ``L_n^1(x) / (n + 1)``.

    Only the nonpositive-integer first parameter is supported; anything else
    raises :class:`DomainError`.
    """
    n = _check_index("first Kummer parameter (negated)", n)
    return laguerre_assoc(n, 1, x) / (n + 1)


def compensated_sum(terms, axis=0):
    """Neumaier-compensated sum of an array along ``axis``.

    Vectorised counterpart of :func:`math.fsum` for summing many series at
    once (one series per remaining index).
    """
    arr = np.moveaxis(np.asarray(terms, dtype=float), axis, 0)
    total = np.zeros(arr.shape[1:])
    comp = np.zeros(arr.shape[1:])
    for row in arr:
        t = total + row
        big = np.abs(total) >= np.abs(row)
        comp += np.where(big, (total - t) + row, (row - t) + total)
        total = t
    out = total + comp
    return float(out) if out.ndim == 0 else out
