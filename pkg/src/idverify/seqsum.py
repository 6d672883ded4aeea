"""Infinite series, double series, infinite products, and sequence-limit
extrapolation with certified tails.

Each series closes its tail through an explicit TailStrategy; nothing here
guesses asymptotics.  Alternating sums use the Cohen-Rodriguez Villegas-
Zagier (CVZ) Chebyshev acceleration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

from ._util import Kahan
from .quad import NumericResult

__all__ = [
    "TailStrategy",
    "sum_series",
    "sum_alternating",
    "sum_double",
    "product_infinite",
    "limit_extrapolate",
]


@dataclass(frozen=True)
class TailStrategy:
    """How a series closes its tail.

    kind ∈ {geometric_ratio, integral_tail, alternating_accel,
    asymptotic_model, none_truncate}.  geometric_ratio carries q in [0,1);
    integral_tail carries tail_fn(N) -> (tail_value, tail_err) for last
    summed index N; asymptotic_model carries (c, alpha) with terms ~ c*n^-alpha,
    alpha > 1; none_truncate carries a fixed term count.
    """

    kind: str
    q: float = 0.0
    tail_fn: Optional[Callable[[int], tuple[float, float]]] = None
    c: float = 0.0
    alpha: float = 0.0
    n_trunc: int = 0

    def __post_init__(self) -> None:
        if self.kind == "geometric_ratio":
            if not 0.0 <= self.q < 1.0:
                raise ValueError(f"geometric ratio must be in [0,1), got {self.q}")
        elif self.kind == "integral_tail":
            if self.tail_fn is None:
                raise ValueError("integral_tail needs tail_fn")
        elif self.kind == "asymptotic_model":
            if not self.alpha > 1.0:
                raise ValueError(f"asymptotic_model needs alpha > 1, got {self.alpha}")
        elif self.kind == "none_truncate":
            if self.n_trunc < 1:
                raise ValueError("none_truncate needs a positive term count")
        elif self.kind != "alternating_accel":
            raise ValueError(f"unknown tail strategy: {self.kind!r}")

    @staticmethod
    def geometric(q: float) -> "TailStrategy":
        return TailStrategy("geometric_ratio", q=q)

    @staticmethod
    def integral(tail_fn: Callable[[int], tuple[float, float]]) -> "TailStrategy":
        return TailStrategy("integral_tail", tail_fn=tail_fn)

    @staticmethod
    def alternating() -> "TailStrategy":
        return TailStrategy("alternating_accel")

    @staticmethod
    def asymptotic(c: float, alpha: float) -> "TailStrategy":
        return TailStrategy("asymptotic_model", c=c, alpha=alpha)

    @staticmethod
    def truncate(n: int) -> "TailStrategy":
        return TailStrategy("none_truncate", n_trunc=n)


def _power_tail(n: float, alpha: float) -> tuple[float, float]:
    # sum_{k>n} k^-alpha by Euler-Maclaurin from above, with the magnitude of
    # the first omitted correction as the truncation bound.
    a = alpha
    value = n ** (1.0 - a) / (a - 1.0) - 0.5 * n ** -a \
        + (a / 12.0) * n ** (-a - 1.0) \
        - (a * (a + 1.0) * (a + 2.0) / 720.0) * n ** (-a - 3.0)
    bound = (a * (a + 1.0) * (a + 2.0) * (a + 3.0) * (a + 4.0) / 30240.0) \
        * n ** (-a - 5.0)
    return value, bound


def sum_series(term: Callable[[int], float], start: int, tail: TailStrategy,
               tol: float, max_terms: int = 1_000_000,
               min_terms: int = 8) -> NumericResult:
    """Sum term(n) for n >= start, closing the tail per the strategy.

    converged implies the reported err (truncation bound plus rounding floor)
    is at or below tol.
    """
    if tail.kind == "alternating_accel":
        t0 = term(start)
        t1 = term(start + 1)
        if t0 * t1 >= 0.0:
            raise ValueError("alternating_accel requires alternating term signs")
        r = sum_alternating(lambda n: abs(term(n)), start, tol)
        sign = 1.0 if t0 > 0.0 else -1.0
        return NumericResult(sign * r.value, r.err, r.evaluations + 2, r.converged)

    acc = Kahan()
    acc_abs = Kahan()

    if tail.kind == "none_truncate":
        last = 0.0
        for n in range(start, start + tail.n_trunc):
            t = term(n)
            if not math.isfinite(t):
                raise ValueError(f"non-finite term {t!r} at n={n}")
            acc.add(t)
            acc_abs.add(abs(t))
            last = t
        err = abs(last) + 2e-16 * acc_abs.value
        return NumericResult(acc.value, err, tail.n_trunc, err <= tol)

    n = start
    count = 0
    t = 0.0
    while count < max_terms:
        t = term(n)
        if not math.isfinite(t):
            raise ValueError(f"non-finite term {t!r} at n={n}")
        acc.add(t)
        acc_abs.add(abs(t))
        count += 1

        if count >= min_terms:
            if tail.kind == "geometric_ratio":
                bound = abs(t) * tail.q / (1.0 - tail.q)
                if bound <= 0.5 * tol or count == max_terms:
                    acc.add(t * tail.q / (1.0 - tail.q))
                    err = bound + 2e-16 * acc_abs.value
                    return NumericResult(acc.value, err, count, err <= tol)
            elif tail.kind == "integral_tail":
                tail_value, tail_err = tail.tail_fn(n)
                if tail_err <= 0.5 * tol or count == max_terms:
                    acc.add(tail_value)
                    err = abs(tail_err) + 2e-16 * acc_abs.value
                    return NumericResult(acc.value, err, count, err <= tol)
            else:  # asymptotic_model
                model = tail.c * float(n) ** -tail.alpha
                tail_value, tail_bound = _power_tail(float(n), tail.alpha)
                mismatch = abs(t - model) * float(n) / (tail.alpha - 1.0) \
                    + abs(tail.c) * tail_bound
                if mismatch <= 0.5 * tol or count == max_terms:
                    acc.add(tail.c * tail_value)
                    err = mismatch + 2e-16 * acc_abs.value
                    return NumericResult(acc.value, err, count, err <= tol)
        n += 1

    return NumericResult(acc.value, abs(t), count, False)


_CVZ_RATE = 3.0 + math.sqrt(8.0)


def sum_alternating(magnitude: Callable[[int], float], start: int, tol: float,
                    n_terms: int = 40) -> NumericResult:
    """CVZ acceleration of sum_{k>=0} (-1)^k magnitude(start+k).

    The leading term is taken positive; err follows the method's 5.83^-N
    bound with a binary64 rounding floor.  Magnitudes must be eventually
    monotone decreasing; growth beyond the burn-in window raises ValueError.
    """
    n = n_terms
    mags = []
    for k in range(n):
        m = magnitude(start + k)
        if not (math.isfinite(m) and m >= 0.0):
            raise ValueError(f"bad magnitude {m!r} at index {start + k}")
        mags.append(m)
    burn_in = 8
    for k in range(burn_in, n - 1):
        if mags[k + 1] > mags[k] * (1.0 + 1e-12) + 1e-300:
            raise ValueError(
                f"magnitudes not decreasing beyond burn-in at index {start + k + 1}")

    d = _CVZ_RATE ** n
    d = 0.5 * (d + 1.0 / d)
    b = -1.0
    c = -d
    s = Kahan()
    for k in range(n):
        c = b - c
        s.add(c * mags[k])
        b = (k + n) * (k - n) * b / ((k + 0.5) * (k + 1.0))
    value = s.value / d
    err = max(2.0 * mags[0] * _CVZ_RATE ** -n,
              4e-16 * (abs(value) + (mags[0] if mags else 0.0)))
    return NumericResult(value, err, n, err <= tol)


def sum_double(term: Callable[[int, int], float], tail: TailStrategy, tol: float,
               row_tail: Optional[Callable[[int], TailStrategy]] = None,
               rows: int = 1000, row_tol: Optional[float] = None,
               row_start: int = 1, col_start: int = 1,
               max_row_terms: int = 1_000_000) -> NumericResult:
    """Absolutely convergent double sum: rows summed over the second index,
    each closed by its own tail strategy, then the outer sum over row index
    closed by `tail`.  err accumulates row and outer contributions."""
    if row_tail is None:
        row_tail = lambda m: tail
    if row_tol is None:
        row_tol = tol
    acc = Kahan()
    err = Kahan()
    evaluations = 0
    rows_converged = True
    last_row = 0.0
    m = row_start
    for i in range(rows):
        r = sum_series(lambda nn: term(m, nn), col_start, row_tail(m), row_tol,
                       max_terms=max_row_terms)
        acc.add(r.value)
        err.add(r.err)
        evaluations += r.evaluations
        rows_converged = rows_converged and r.converged
        last_row = r.value
        m += 1
    n_last = m - 1

    if tail.kind == "integral_tail":
        tail_value, tail_err = tail.tail_fn(n_last)
        acc.add(tail_value)
        err.add(abs(tail_err))
    elif tail.kind == "asymptotic_model":
        model = tail.c * float(n_last) ** -tail.alpha
        tail_value, tail_bound = _power_tail(float(n_last), tail.alpha)
        acc.add(tail.c * tail_value)
        err.add(abs(last_row - model) * float(n_last) / (tail.alpha - 1.0)
                + abs(tail.c) * tail_bound)
    elif tail.kind == "none_truncate":
        err.add(abs(last_row))
    else:
        raise ValueError(f"unsupported outer tail for sum_double: {tail.kind}")

    total_err = err.value
    return NumericResult(acc.value, total_err, evaluations,
                         rows_converged and total_err <= tol)


def product_infinite(factor: Callable[[int], float], start: int,
                     tail: TailStrategy, tol: float,
                     max_terms: int = 1_000_000) -> NumericResult:
    """Infinite product computed as exp(sum_series(log factor))."""
    def log_factor(n: int) -> float:
        f = factor(n)
        if not (math.isfinite(f) and f > 0.0):
            raise ValueError(f"non-positive or non-finite factor {f!r} at n={n}")
        return math.log(f)

    r = sum_series(log_factor, start, tail, tol, max_terms=max_terms)
    value = math.exp(r.value)
    err = value * math.expm1(r.err) if r.err < 1.0 else math.inf
    return NumericResult(value, err, r.evaluations, r.converged)


def _richardson(samples: list[float]) -> tuple[float, float]:
    # In-place Richardson table; after processing column j the slot t[j]
    # holds the frozen diagonal entry T[j][j], so the final array is the
    # diagonal and the last two entries give value and error estimate.
    t = list(samples)
    k_max = len(t) - 1
    for j in range(1, k_max + 1):
        p = 2.0 ** j
        for i in range(k_max, j - 1, -1):
            t[i] = (p * t[i] - t[i - 1]) / (p - 1.0)
    return t[k_max], abs(t[k_max] - t[k_max - 1])


def _wynn(samples: list[float]) -> tuple[float, float]:
    prev = [0.0] * (len(samples) + 1)
    cur = list(samples)
    estimates = [cur[0]]
    col = 0
    while len(cur) >= 2:
        nxt = []
        for i in range(len(cur) - 1):
            denom = cur[i + 1] - cur[i]
            if denom == 0.0:
                return cur[i + 1], 0.0
            nxt.append(prev[i + 1] + 1.0 / denom)
        prev, cur = cur, nxt
        col += 1
        if col % 2 == 0:
            estimates.append(cur[0])
    if len(estimates) >= 2:
        return estimates[-1], abs(estimates[-1] - estimates[-2])
    return estimates[-1], abs(samples[-1] - samples[0])


def _aitken(samples: list[float]) -> tuple[float, float]:
    arr = list(samples)
    last = arr[-1]
    err = math.inf
    while len(arr) >= 3:
        nxt = []
        for i in range(len(arr) - 2):
            denom = arr[i + 2] - 2.0 * arr[i + 1] + arr[i]
            if denom == 0.0:
                nxt.append(arr[i + 2])
            else:
                d = arr[i + 1] - arr[i]
                nxt.append(arr[i] - d * d / denom)
        err = abs(nxt[-1] - last)
        last = nxt[-1]
        arr = nxt
    return last, (err if math.isfinite(err) else 0.0)


def limit_extrapolate(seq: Callable[[int], float], n0: int, big_k: int,
                      method: str = "richardson",
                      tol: Optional[float] = None) -> NumericResult:
    """Extrapolate lim seq(n) from samples at n = n0 * 2^k, k = 0..K.

    err is the difference of the last two extrapolants; converged checks err
    against tol when given, else requires a finite value.
    """
    if big_k < 1:
        raise ValueError("need K >= 1 samples beyond the first")
    if method not in ("richardson", "wynn_epsilon", "aitken"):
        raise ValueError(f"unknown extrapolation method: {method!r}")
    samples = []
    for k in range(big_k + 1):
        v = float(seq(n0 * 2 ** k))
        if not math.isfinite(v):
            raise ValueError(f"non-finite sequence value {v!r} at k={k}")
        samples.append(v)
    if method == "richardson":
        value, err = _richardson(samples)
    elif method == "wynn_epsilon":
        value, err = _wynn(samples)
    else:
        value, err = _aitken(samples)
    if len(set(samples)) == 1:
        value, err = samples[0], 0.0
    converged = (err <= tol) if tol is not None else math.isfinite(value)
    return NumericResult(value, err, big_k + 1, converged)
