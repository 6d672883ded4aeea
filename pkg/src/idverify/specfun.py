"""Special functions: zeta, eta, dilogarithm, trigamma, log-gamma/beta,
Chebyshev polynomials, exact harmonic numbers.

Exact rationals are represented with fractions.Fraction (always lowest terms,
positive denominator, overflow-free by construction).
"""

from __future__ import annotations

import math
from fractions import Fraction

from ._util import Kahan

__all__ = [
    "zeta", "eta", "dilog", "trigamma", "harmonic",
    "chebyshev", "log_gamma", "beta",
]

# B_2, B_4, ..., B_14
_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
)


def zeta(s: float) -> float:
    """Riemann zeta for s > 1, relative error <= 1e-13.

    Euler-Maclaurin with N = 20 and Bernoulli corrections through B_12; the
    first omitted term bounds the remainder below 1e-19 relative over s > 1.
    """
    if not s > 1.0:
        raise ValueError(f"zeta requires s > 1, got {s}")
    n = 20
    acc = Kahan()
    for j in range(1, n):
        acc.add(j ** -s)
    acc.add(n ** (1.0 - s) / (s - 1.0))
    acc.add(0.5 * n ** -s)
    # sum_k B_2k/(2k)! * s(s+1)...(s+2k-2) * n^(1-s-2k)
    poch = s
    fact = 2.0
    for k in range(1, 7):
        b2k = float(_BERNOULLI[k - 1])
        acc.add(b2k / fact * poch * n ** (1.0 - s - 2 * k))
        poch *= (s + 2 * k - 1) * (s + 2 * k)
        fact *= (2 * k + 1) * (2 * k + 2)
    return acc.value


def eta(s: float) -> float:
    """Dirichlet eta for s >= 1; eta(1) = log 2."""
    if not s >= 1.0:
        raise ValueError(f"eta requires s >= 1, got {s}")
    if s == 1.0:
        return math.log(2.0)
    return -math.expm1((1.0 - s) * math.log(2.0)) * zeta(s)


def _dilog_series(x: float) -> float:
    # Power series sum x^k/k^2, |x| <= 1/2.
    acc = Kahan()
    p = x
    k = 1
    while abs(p) > 1e-18:
        acc.add(p / (k * k))
        p *= x
        k += 1
    return acc.value


_PI2_6 = math.pi * math.pi / 6.0


def dilog(x: float) -> float:
    """Li2(x) for x <= 1, absolute error <= 1e-12.

    Direct series on [-1/2, 1/2]; Landen transform on [-1, -1/2); Euler
    reflection on (1/2, 1]; the inversion identity
    Li2(x) + Li2(1/x) = -pi^2/6 - log^2(-x)/2 for x < -1.
    """
    if x > 1.0:
        raise ValueError(f"dilog requires x <= 1, got {x}")
    if x == 1.0:
        return _PI2_6
    if x == 0.0:
        return 0.0
    if x < -1.0:
        u = math.log(-x)
        return -_PI2_6 - 0.5 * u * u - dilog(1.0 / x)
    if x < -0.5:
        # Landen: Li2(x) = -Li2(x/(x-1)) - log^2(1-x)/2
        u = math.log1p(-x)
        return -dilog(x / (x - 1.0)) - 0.5 * u * u
    if x <= 0.5:
        return _dilog_series(x)
    return _PI2_6 - math.log(x) * math.log1p(-x) - dilog(1.0 - x)


def trigamma(x: float) -> float:
    """psi'(x) = sum_{j>=0} 1/(j+x)^2 for x > 0, relative error <= 1e-12.

    Recurrence shift to x >= 20, then the asymptotic series through x^-9
    (first omitted term < 1e-14 relative at the shift point).
    """
    if not x > 0.0:
        raise ValueError(f"trigamma requires x > 0, got {x}")
    acc = Kahan()
    while x < 20.0:
        acc.add(1.0 / (x * x))
        x += 1.0
    inv = 1.0 / x
    inv2 = inv * inv
    s = inv * (1.0 + inv * (0.5 + inv * (1.0 / 6.0 + inv2 * (-1.0 / 30.0
        + inv2 * (1.0 / 42.0 + inv2 * (-1.0 / 30.0))))))
    acc.add(s)
    return acc.value


def harmonic(n: int, order: int = 1) -> Fraction:
    """Exact harmonic number sum_{j=1..n} 1/j^order, order in {1, 2}."""
    if n < 0:
        raise ValueError(f"harmonic requires n >= 0, got {n}")
    if order not in (1, 2):
        raise ValueError(f"harmonic order must be 1 or 2, got {order}")
    total = Fraction(0)
    for j in range(1, n + 1):
        total += Fraction(1, j ** order)
    return total


def chebyshev(kind: str, n: int, x: float) -> float:
    """Chebyshev polynomial T_n(x) or U_n(x) by three-term recurrence."""
    if kind not in ("T", "U"):
        raise ValueError(f"kind must be 'T' or 'U', got {kind!r}")
    if n < 0:
        raise ValueError(f"chebyshev requires n >= 0, got {n}")
    prev = 1.0
    cur = x if kind == "T" else 2.0 * x
    if n == 0:
        return prev
    for _ in range(n - 1):
        prev, cur = cur, 2.0 * x * cur - prev
    return cur


def log_gamma(x: float) -> float:
    """log Gamma(x) for x > 0, relative error <= 1e-12."""
    if not x > 0.0:
        raise ValueError(f"log_gamma requires x > 0, got {x}")
    return math.lgamma(x)


def beta(a: float, b: float) -> float:
    """Euler beta, exp(log_gamma a + log_gamma b - log_gamma(a+b))."""
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"beta requires positive arguments, got ({a}, {b})")
    return math.exp(log_gamma(a) + log_gamma(b) - log_gamma(a + b))
