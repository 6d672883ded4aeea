"""Closed tail bounds shared by the series entries.

Every helper returns a ``(value, err)`` pair shaped for
``TailStrategy.integral``: ``value`` approximates the sum of all terms
beyond the truncation index and ``err`` bounds the approximation error.
"""

from __future__ import annotations

import math
from typing import Callable, Sequence, Tuple

from ..quad import Interval, QuadOptions, integrate

__all__ = [
    "shifted_power_tail",
    "power_combo_tail",
    "em_tail",
    "prime_reciprocal_square_tail",
]


def shifted_power_tail(n_last: int, p: float, scale: float = 1.0,
                       shift: float = 0.0) -> Tuple[float, float]:
    """sum_{n > n_last} (scale*n + shift)^-p via Euler-Maclaurin.

    Requires p > 1 and scale*n + shift > 0 beyond the truncation point.  The
    summand is completely monotone in n, so the remainder after the last
    correction term is bounded by the first omitted term.
    """
    if p <= 1.0:
        raise ValueError(f"need p > 1, got {p}")
    a = scale * (n_last + 1) + shift
    if not a > 0.0:
        raise ValueError("tail terms must be positive")
    s = scale
    # sum_{n>=N+1} g(n) = int_{N+1}^inf g + g/2 - g'/12 + g'''/720 - g^(5)/30240 + R
    g = a ** -p
    d1 = -p * s * a ** -(p + 1.0)
    d3 = -p * (p + 1.0) * (p + 2.0) * s ** 3 * a ** -(p + 3.0)
    d5 = (-p * (p + 1.0) * (p + 2.0) * (p + 3.0) * (p + 4.0)
          * s ** 5 * a ** -(p + 5.0))
    integral = a ** (1.0 - p) / (s * (p - 1.0))
    value = integral + g / 2.0 - d1 / 12.0 + d3 / 720.0 - d5 / 30240.0
    err = abs(d5) / 30240.0 + 1e-16 * abs(value)
    return value, err


def power_combo_tail(n_last: int,
                     terms: Sequence[Tuple[float, float]],
                     err_term: Tuple[float, float]) -> Tuple[float, float]:
    """Tail of a sum whose summand expands as sum_i c_i * n^-p_i plus a
    remainder dominated by |c_e| * n^-p_e.

    ``terms`` lists (c_i, p_i); ``err_term`` gives (c_e, p_e).  All p > 1.
    """
    value = 0.0
    err = 0.0
    for c, p in terms:
        t, e = shifted_power_tail(n_last, p)
        value += c * t
        err += abs(c) * e
    c_e, p_e = err_term
    t, e = shifted_power_tail(n_last, p_e)
    err += abs(c_e) * (t + e)
    return value, err


def em_tail(n_last: int, fn: Callable[[float], float],
            derivatives: Sequence[Callable[[float], float]],
            quad_tol: float = 1e-13) -> Tuple[float, float]:
    """sum_{n > n_last} fn(n) by Euler-Maclaurin with explicit derivatives.

    ``derivatives`` supplies fn', fn''', fn^(5), ... (odd orders); the
    remainder is bounded by the magnitude of the last correction used, which
    is valid when fn has eventually monotone derivatives of all used orders
    (true for the algebraic-logarithmic summands in this corpus).  The
    integral piece runs on the half line via exp-sinh quadrature.
    """
    a = float(n_last + 1)
    quad = integrate(fn, Interval.semi_infinite(a),
                     QuadOptions(target_abs_tol=quad_tol))
    value = quad.value + fn(a) / 2.0
    last = fn(a) / 2.0
    coeffs = (-1.0 / 12.0, 1.0 / 720.0, -1.0 / 30240.0, 1.0 / 1209600.0)
    for i, deriv in enumerate(derivatives):
        if i >= len(coeffs):
            raise ValueError("too many correction orders")
        last = coeffs[i] * deriv(a)
        value += last
    err = quad.err + abs(last)
    return value, err


_LI_COEFF = 0.2795
_LI_DENOM = 6.455


def _pnt_error_bound(x: float) -> float:
    # Prime-count deviation |pi(t) - li(t)| <= 0.2795 t (ln t)^(-3/4)
    # exp(-sqrt(ln t / 6.455)) for t >= 229, monotone increasing in t over
    # the ranges used here.
    lt = math.log(x)
    return _LI_COEFF * x * lt ** -0.75 * math.exp(-math.sqrt(lt / _LI_DENOM))


def prime_reciprocal_square_tail(x: float) -> Tuple[float, float]:
    """sum over primes p > x of -log(1 - p^-2), for x >= 1e5.

    The prime counting function is modelled by its logarithmic integral;
    the returned err bound charges the full unconditional deviation bound
    |pi(t) - li(t)| against both the boundary term and the integral term.
    """
    if x < 1e5:
        raise ValueError("tail model needs x >= 1e5")

    def density(t: float) -> float:
        return -math.log1p(-1.0 / (t * t)) / math.log(t)

    quad = integrate(density, Interval.semi_infinite(x),
                     QuadOptions(target_abs_tol=1e-16))
    bound = _pnt_error_bound(4.0 * x)
    # Stieltjes boundary plus integral sensitivity: both are <= B(t)/t^2
    # shaped with B monotone over the tail.
    err = quad.err + 3.0 * bound / (x * x)
    return quad.value, err
