"""Double-exponential quadrature.

Finite intervals use the tanh-sinh transform, semi-infinite intervals use
exp-sinh, and the whole line is split at 0 into two exp-sinh halves.  All
abscissae are strictly interior: near an endpoint the offset is computed in
exponential form, and points whose offset or weight underflows are skipped
without evaluating the integrand.  Interior singularities are handled only
through explicit split points; each sub-interval is integrated independently
and the error estimates are accumulated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Tuple

from ._util import Kahan

__all__ = [
    "EvaluationError",
    "Interval",
    "NumericResult",
    "QuadOptions",
    "integrate",
    "integrate_complex",
]

_TMAX = 6.0
_HALF_PI = 0.5 * math.pi


class EvaluationError(ArithmeticError):
    """Integrand returned NaN or +/-inf at an interior abscissa."""


@dataclass(frozen=True)
class NumericResult:
    """A computed value with a claimed absolute-error bound."""

    value: float
    err: float
    evaluations: int
    converged: bool

    def __post_init__(self) -> None:
        if self.err < 0.0 or math.isnan(self.err):
            raise ValueError(f"err must be >= 0, got {self.err}")
        if self.evaluations < 0:
            raise ValueError("evaluations must be >= 0")


@dataclass(frozen=True)
class Interval:
    """Integration range: finite(a,b), semi_infinite(a), or real_line.

    split_points are strictly ascending interior points where the integrand
    has kinks or singularities; endpoint_singularity is a (left, right) flag
    pair kept as metadata (every endpoint is already treated as potentially
    singular by the transform).
    """

    kind: str
    a: float = 0.0
    b: float = 0.0
    split_points: Tuple[float, ...] = ()
    endpoint_singularity: Tuple[bool, bool] = (False, False)

    def __post_init__(self) -> None:
        if self.kind not in ("finite", "semi_infinite", "real_line"):
            raise ValueError(f"unknown interval kind: {self.kind!r}")
        pts = tuple(float(p) for p in self.split_points)
        object.__setattr__(self, "split_points", pts)
        if any(pts[i] >= pts[i + 1] for i in range(len(pts) - 1)):
            raise ValueError("split_points must be strictly ascending")
        if self.kind == "finite":
            if not self.a < self.b:
                raise ValueError(f"finite interval needs a < b, got [{self.a}, {self.b}]")
            if pts and not (self.a < pts[0] and pts[-1] < self.b):
                raise ValueError("split_points must lie strictly inside (a, b)")
        elif self.kind == "semi_infinite":
            if pts and pts[0] <= self.a:
                raise ValueError("split_points must lie strictly above a")

    @staticmethod
    def finite(a: float, b: float, split_points=(), endpoint_singularity=(False, False)) -> "Interval":
        return Interval("finite", float(a), float(b), tuple(split_points),
                        tuple(endpoint_singularity))

    @staticmethod
    def semi_infinite(a: float, split_points=(), endpoint_singularity=(False, False)) -> "Interval":
        return Interval("semi_infinite", float(a), math.inf, tuple(split_points),
                        tuple(endpoint_singularity))

    @staticmethod
    def real_line(split_points=()) -> "Interval":
        return Interval("real_line", -math.inf, math.inf, tuple(split_points))


@dataclass(frozen=True)
class QuadOptions:
    target_abs_tol: float = 1e-10
    max_level: int = 12

    def __post_init__(self) -> None:
        if not self.target_abs_tol > 0.0:
            raise ValueError("target_abs_tol must be > 0")
        if not 3 <= self.max_level <= 16:
            raise ValueError("max_level must be in [3, 16]")


def _tanh_sinh_point(a: float, b: float, t: float):
    # x = midpoint + (b-a)/2 * tanh((pi/2) sinh t), written as an offset from
    # the nearer endpoint so x never rounds onto a or b until true underflow.
    u = _HALF_PI * math.sinh(t)
    au = abs(u)
    eu = math.exp(-2.0 * au)
    delta = (b - a) * eu / (1.0 + eu)
    x = b - delta if t >= 0.0 else a + delta
    if x <= a or x >= b:
        return None
    sech = 2.0 * math.exp(-au) / (1.0 + eu)
    w = _HALF_PI * math.cosh(t) * sech * sech * 0.5 * (b - a)
    if w <= 0.0 or math.isinf(w):
        return None
    return x, w


def _exp_sinh_point(a: float, sign: float, t: float):
    # x = a + sign*exp((pi/2) sinh t); covers (a, inf) or (-inf, a).
    u = _HALF_PI * math.sinh(t)
    y = math.exp(u)
    x = a + sign * y
    if x == a or math.isinf(x):
        return None
    w = _HALF_PI * math.cosh(t) * y
    if w <= 0.0 or math.isinf(w):
        return None
    return x, w


def _level_sums(point_fn, f: Callable[[float], float], opts: QuadOptions):
    """Trapezoid sums over the transformed line with level doubling."""
    evaluations = 0

    def sample(t: float) -> tuple[float, float]:
        nonlocal evaluations
        p = point_fn(t)
        if p is None:
            return 0.0, 0.0
        x, w = p
        try:
            fx = f(x)
        except (OverflowError, ValueError, ZeroDivisionError) as exc:
            raise EvaluationError(f"integrand raised {exc!r} at x={x!r}") from exc
        evaluations += 1
        wf = w * fx
        if not math.isfinite(wf):
            raise EvaluationError(
                f"integrand evaluation gave {fx!r} at x={x!r} (weighted {wf!r})")
        return wf, abs(wf)

    acc = Kahan()
    acc_abs = Kahan()
    wf, awf = sample(0.0)
    acc.add(wf)
    acc_abs.add(awf)
    for k in range(1, int(_TMAX) + 1):
        for t in (k * 1.0, -k * 1.0):
            wf, awf = sample(t)
            acc.add(wf)
            acc_abs.add(awf)

    h = 1.0
    s_prev = h * acc.value
    diff = math.inf
    stopped = False
    for level in range(1, opts.max_level + 1):
        h *= 0.5
        n_half = int(_TMAX / h)
        for j in range(1, n_half + 1, 2):
            for t in (j * h, -j * h):
                wf, awf = sample(t)
                acc.add(wf)
                acc_abs.add(awf)
        s_cur = h * acc.value
        diff = abs(s_cur - s_prev)
        s_prev = s_cur
        floor = 1e-15 * (abs(s_cur) + h * acc_abs.value)
        if level >= 3 and (diff <= opts.target_abs_tol or diff <= floor):
            stopped = True
            break
    if not math.isfinite(s_prev):
        raise EvaluationError(f"non-finite quadrature sum {s_prev!r}")
    err = max(diff, 2e-16 * (abs(s_prev) + h * acc_abs.value))
    return NumericResult(s_prev, err, evaluations, stopped and err <= opts.target_abs_tol)


def _integrate_piece(f, piece, opts: QuadOptions) -> NumericResult:
    kind = piece[0]
    if kind == "finite":
        _, a, b = piece
        return _level_sums(lambda t: _tanh_sinh_point(a, b, t), f, opts)
    if kind == "semi_up":
        _, a = piece
        return _level_sums(lambda t: _exp_sinh_point(a, 1.0, t), f, opts)
    _, b = piece
    return _level_sums(lambda t: _exp_sinh_point(b, -1.0, t), f, opts)


def _pieces(iv: Interval):
    pts = iv.split_points
    if iv.kind == "finite":
        knots = (iv.a,) + pts + (iv.b,)
        return [("finite", knots[i], knots[i + 1]) for i in range(len(knots) - 1)]
    if iv.kind == "semi_infinite":
        knots = (iv.a,) + pts
        pieces = [("finite", knots[i], knots[i + 1]) for i in range(len(knots) - 1)]
        pieces.append(("semi_up", knots[-1]))
        return pieces
    if not pts:
        return [("semi_down", 0.0), ("semi_up", 0.0)]
    pieces = [("semi_down", pts[0])]
    pieces.extend(("finite", pts[i], pts[i + 1]) for i in range(len(pts) - 1))
    pieces.append(("semi_up", pts[-1]))
    return pieces


def integrate(f: Callable[[float], float], iv: Interval,
              opts: QuadOptions | None = None) -> NumericResult:
    """Integrate f over iv; converged implies |value - true| <= 10*err
    on the calibration corpus.  NaN/inf from the integrand raises
    EvaluationError; non-convergence returns converged=False with the best
    estimate."""
    if opts is None:
        opts = QuadOptions()
    value = Kahan()
    err = Kahan()
    evaluations = 0
    converged = True
    for piece in _pieces(iv):
        r = _integrate_piece(f, piece, opts)
        value.add(r.value)
        err.add(r.err)
        evaluations += r.evaluations
        converged = converged and r.converged
    return NumericResult(value.value, err.value, evaluations, converged)


def integrate_complex(f: Callable[[float], Tuple[float, float]], iv: Interval,
                      opts: QuadOptions | None = None) -> tuple[NumericResult, NumericResult]:
    """Componentwise integration of a complex-valued integrand given as
    x -> (re, im)."""
    re = integrate(lambda x: f(x)[0], iv, opts)
    im = integrate(lambda x: f(x)[1], iv, opts)
    return re, im
