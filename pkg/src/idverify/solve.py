"""Bracketed root finding (Brent), root enumeration, root-power sums with
asymptotic tails, and deterministic multistart Nelder-Mead minimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, List, Sequence, Tuple

from ._util import Kahan
from .quad import NumericResult

__all__ = [
    "Bracket",
    "TailModel",
    "root_bracketed",
    "enumerate_roots",
    "root_power_sum",
    "minimize_multistart",
]

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class Bracket:
    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"bracket needs a < b, got [{self.a}, {self.b}]")


@dataclass(frozen=True)
class TailModel:
    """Asymptotic location of the n-th root and a bound on |r_n - asymptote(n)|.

    deviation_bound must be non-negative and non-increasing beyond the index
    where the model takes over.
    """

    asymptote: Callable[[int], float]
    deviation_bound: Callable[[int], float]


def root_bracketed(f: Callable[[float], float], br: Bracket, tol: float = 1e-13,
                   max_iter: int = 200) -> float:
    """Brent's method; the effective tolerance is floored at 1e-14*|x|."""
    a, b = br.a, br.b
    fa, fb = f(a), f(b)
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if fa * fb > 0.0:
        raise ValueError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    c, fc = a, fa
    d = e = b - a
    for _ in range(max_iter):
        if fb * fc > 0.0:
            c, fc = a, fa
            d = e = b - a
        if abs(fc) < abs(fb):
            a, b, c = b, c, b
            fa, fb, fc = fb, fc, fb
        tol1 = 2.0 * _EPS * abs(b) + 0.5 * max(tol, 1e-14 * abs(b))
        xm = 0.5 * (c - b)
        if abs(xm) <= tol1 or fb == 0.0:
            return b
        if abs(e) >= tol1 and abs(fa) > abs(fb):
            s = fb / fa
            if a == c:
                p = 2.0 * xm * s
                q = 1.0 - s
            else:
                q = fa / fc
                r = fb / fc
                p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0))
                q = (q - 1.0) * (r - 1.0) * (s - 1.0)
            if p > 0.0:
                q = -q
            p = abs(p)
            if 2.0 * p < min(3.0 * xm * q - abs(tol1 * q), abs(e * q)):
                e = d
                d = p / q
            else:
                d = xm
                e = d
        else:
            d = xm
            e = d
        a, fa = b, fb
        if abs(d) > tol1:
            b += d
        else:
            b += math.copysign(tol1, xm)
        fb = f(b)
    raise ValueError(f"root_bracketed: no convergence in {max_iter} iterations")


def enumerate_roots(f: Callable[[float], float],
                    bracket_gen: Callable[[int], Bracket],
                    count: int, tol: float = 1e-13) -> List[float]:
    """Roots from bracket_gen(0..count-1), returned ascending."""
    roots: List[float] = []
    for n in range(count):
        br = bracket_gen(n)
        try:
            roots.append(root_bracketed(f, br, tol))
        except ValueError as exc:
            raise ValueError(f"bracket {n} ([{br.a}, {br.b}]): {exc}") from exc
    if any(roots[i] >= roots[i + 1] for i in range(len(roots) - 1)):
        raise ValueError("enumerated roots are not strictly ascending")
    return roots


def root_power_sum(roots: Sequence[float], exponent: int, tail: TailModel,
                   tail_start: int) -> NumericResult:
    """sum roots^-exponent plus the asymptote tail from tail_start upward.

    err is at least exponent * sum deviation_bound(n)*asymptote(n)^-(e+1)
    over the tail (first-order sensitivity of the modelled tail terms).
    """
    if exponent < 2:
        raise ValueError(f"exponent must be >= 2, got {exponent}")
    acc = Kahan()
    for r in roots:
        if not r > 0.0:
            raise ValueError(f"roots must be positive, got {r}")
        acc.add(float(r) ** -exponent)

    err_acc = Kahan()
    n = tail_start
    evaluations = len(roots)
    while True:
        s = tail.asymptote(n)
        if not s > 0.0:
            raise ValueError(f"asymptote must be positive, got {s} at n={n}")
        term = s ** -exponent
        acc.add(term)
        err_acc.add(exponent * tail.deviation_bound(n) * s ** -(exponent + 1))
        evaluations += 1
        n += 1
        if term < 1e-22 or n - tail_start > 2_000_000:
            # integral bound on what remains of the modelled tail
            acc.add(term * n / (exponent - 1.0))
            err_acc.add(term * n / (exponent - 1.0))
            break
    err = err_acc.value + 4e-16 * abs(acc.value)
    return NumericResult(acc.value, err, evaluations, True)


def _lcg_stream(seed: int):
    state = (seed * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
    while True:
        state = (state * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
        yield state / 18446744073709551616.0


_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29)


def _halton(index: int, base: int) -> float:
    f = 1.0
    r = 0.0
    i = index
    while i > 0:
        f /= base
        r += f * (i % base)
        i //= base
    return r


def _start_points(starts: int, dim: int, seed: int) -> list[list[float]]:
    # Halton sequence with a seeded Cranley-Patterson rotation.
    if dim > len(_PRIMES):
        raise ValueError(f"dimension {dim} too large")
    gen = _lcg_stream(seed)
    shifts = [next(gen) for _ in range(dim)]
    pts = []
    for k in range(starts):
        pts.append([math.modf(_halton(k + 1, _PRIMES[j]) + shifts[j])[0]
                    for j in range(dim)])
    return pts


def _nelder_mead(fn, x0: list[float], tol: float, max_iter: int):
    dim = len(x0)
    simplex = [list(x0)]
    for i in range(dim):
        p = list(x0)
        step = 0.05 * (abs(p[i]) + 1.0)
        p[i] += step
        simplex.append(p)
    vals = [fn(p) for p in simplex]

    for _ in range(max_iter):
        order = sorted(range(dim + 1), key=lambda i: vals[i])
        simplex = [simplex[i] for i in order]
        vals = [vals[i] for i in order]
        if abs(vals[-1] - vals[0]) <= tol * (abs(vals[0]) + abs(vals[-1]) + 1e-30):
            break
        centroid = [sum(p[j] for p in simplex[:-1]) / dim for j in range(dim)]
        worst = simplex[-1]
        refl = [centroid[j] + (centroid[j] - worst[j]) for j in range(dim)]
        f_refl = fn(refl)
        if f_refl < vals[0]:
            expa = [centroid[j] + 2.0 * (centroid[j] - worst[j]) for j in range(dim)]
            f_expa = fn(expa)
            if f_expa < f_refl:
                simplex[-1], vals[-1] = expa, f_expa
            else:
                simplex[-1], vals[-1] = refl, f_refl
        elif f_refl < vals[-2]:
            simplex[-1], vals[-1] = refl, f_refl
        else:
            contr = [centroid[j] + 0.5 * (worst[j] - centroid[j]) for j in range(dim)]
            f_contr = fn(contr)
            if f_contr < vals[-1]:
                simplex[-1], vals[-1] = contr, f_contr
            else:
                for i in range(1, dim + 1):
                    simplex[i] = [0.5 * (simplex[i][j] + simplex[0][j])
                                  for j in range(dim)]
                    vals[i] = fn(simplex[i])
    order = sorted(range(dim + 1), key=lambda i: vals[i])
    return simplex[order[0]], vals[order[0]]


def minimize_multistart(objective: Callable[[Sequence[float]], float],
                        bounds: Sequence[Tuple[float, float]], starts: int = 64,
                        tol: float = 1e-12, seed: int = 0,
                        max_iter: int = 600) -> tuple[list[float], float]:
    """Best of `starts` Nelder-Mead descents from a scrambled low-discrepancy
    start set; bitwise deterministic for fixed (starts, seed).

    Points outside the box are clamped for evaluation with a quadratic
    penalty, which keeps the search inside without requiring the objective
    to be evaluable outside its domain.
    """
    lo = [float(b[0]) for b in bounds]
    hi = [float(b[1]) for b in bounds]

    def penalized(x: Sequence[float]) -> float:
        xc = [min(max(x[j], lo[j]), hi[j]) for j in range(len(x))]
        pen = sum((x[j] - xc[j]) ** 2 for j in range(len(x)))
        return objective(xc) + 1e8 * pen

    best_x: list[float] | None = None
    best_v = math.inf
    for u in _start_points(starts, len(bounds), seed):
        x0 = [lo[j] + u[j] * (hi[j] - lo[j]) for j in range(len(bounds))]
        x, v = _nelder_mead(penalized, x0, tol, max_iter)
        if v < best_v:
            best_x = [min(max(x[j], lo[j]), hi[j]) for j in range(len(x))]
            best_v = v
    if best_x is None:
        raise ValueError("no feasible start")
    return best_x, best_v
