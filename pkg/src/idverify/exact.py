"""Exact big-integer and rational identity checks.

Polynomial arithmetic over Fraction, the finite-difference theorem,
Faa di Bruno composition coefficients, Gregory coefficients, a suite
of binomial/trigonometric identities, exhaustive Diophantine searches,
and brute-force matrix sums over small finite fields.

Everything here is either exact rational arithmetic or binary64 with
an explicit tolerance (the trigonometric suite members).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian

from ._util import Kahan

Rational = Fraction

__all__ = [
    "Poly",
    "MultiIndex",
    "euler_finite_difference",
    "mo_coefficients",
    "bell_number",
    "compose_derivative_check",
    "lagrange_reciprocal_identity",
    "gregory_coefficient",
    "binomial_identity_suite",
    "search_diophantine",
    "gl_sum",
    "primes_upto",
]


# ----------------------------------------------------------------------
# polynomials over Q


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"rational coefficient required, got {type(x).__name__}")


@dataclass(frozen=True)
class Poly:
    """Dense polynomial with Fraction coefficients, ascending degree."""

    coefficients: tuple

    def __init__(self, coefficients):
        coeffs = [_as_fraction(c) for c in coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0.0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + Poly([-c for c in other.coefficients])

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coefficients, other.coefficients
        if not a or not b:
            return Poly([])
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
        return Poly(out)

    def scale(self, factor) -> "Poly":
        f = _as_fraction(factor)
        return Poly([f * c for c in self.coefficients])

    def derivative(self) -> "Poly":
        return Poly([i * c for i, c in enumerate(self.coefficients) if i > 0])

    def antiderivative(self) -> "Poly":
        return Poly([Fraction(0)] + [c / (i + 1) for i, c in enumerate(self.coefficients)])

    def integral(self, a, b) -> Fraction:
        F = self.antiderivative()
        return F(_as_fraction(b)) - F(_as_fraction(a))

    def compose(self, inner: "Poly") -> "Poly":
        acc = Poly([])
        for c in reversed(self.coefficients):
            acc = acc * inner + Poly([c])
        return acc


# ----------------------------------------------------------------------
# multi-indices and exact derivative formulas


@dataclass(frozen=True)
class MultiIndex:
    """Non-decreasing tuple of positive integers with its multiplicities."""

    k: tuple

    def __init__(self, k):
        k = tuple(int(v) for v in k)
        if len(k) < 1 or any(v < 1 for v in k):
            raise ValueError("multi-index entries must be positive integers")
        if any(k[i] > k[i + 1] for i in range(len(k) - 1)):
            raise ValueError("multi-index must be non-decreasing")
        object.__setattr__(self, "k", k)

    @property
    def order(self) -> int:
        return sum(self.k)

    @property
    def length(self) -> int:
        return len(self.k)

    def multiplicities(self) -> dict:
        out = {}
        for v in self.k:
            out[v] = out.get(v, 0) + 1
        return out


def euler_finite_difference(p: Poly, n: int) -> Fraction:
    """Alternating binomial transform sum((-1)^k C(n,k) p(k), k=0..n).

    Vanishes when deg p < n and equals (-1)^n n! a_n when deg p = n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    total = Fraction(0)
    for k in range(n + 1):
        term = math.comb(n, k) * p(Fraction(k))
        total += -term if k % 2 else term
    return total


def _partitions_nondecreasing(n: int, minimum: int = 1):
    # all partitions of n into parts >= minimum, non-decreasing order
    if n == 0:
        yield ()
        return
    for first in range(minimum, n + 1):
        for rest in _partitions_nondecreasing(n - first, first):
            yield (first,) + rest


def mo_coefficients(n: int):
    """All multi-indices of order n with their composition coefficients.

    The coefficient of f^(j)(g(x)) * g^(k1)(x)...g^(kj)(x) in the n-th
    derivative of f(g(x)) is n! / (k1!...kj! * prod_i A(i)!) where A(i)
    counts repeats of i among the k's.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    out = []
    for parts in _partitions_nondecreasing(n):
        mi = MultiIndex(parts)
        coeff = math.factorial(n)
        for v in parts:
            coeff //= math.factorial(v)
        for mult in mi.multiplicities().values():
            coeff //= math.factorial(mult)
        out.append((mi, coeff))
    out.sort(key=lambda pair: pair[0].k)
    return out


def _set_partitions_count(n: int) -> int:
    # direct enumeration: assign each element to an existing or new block
    def count(i: int, blocks: int) -> int:
        if i == n:
            return 1
        return blocks * count(i + 1, blocks) + count(i + 1, blocks + 1)

    return count(1, 1) if n >= 1 else 1


def bell_number(n: int) -> int:
    """n-th Bell number by direct set-partition enumeration."""
    if n < 0:
        raise ValueError("n must be >= 0")
    return _set_partitions_count(n)


def compose_derivative_check(f: Poly, g: Poly, n: int, x) -> bool:
    """Compare the multi-index derivative formula for (f o g)^(n) at x
    against exact polynomial expansion."""
    if not 1 <= n <= 8:
        raise ValueError("n must be in 1..8")
    x = _as_fraction(x)

    direct = f.compose(g)
    for _ in range(n):
        direct = direct.derivative()
    lhs = direct(x)

    f_derivs = [f]
    g_derivs = [g]
    for _ in range(n):
        f_derivs.append(f_derivs[-1].derivative())
        g_derivs.append(g_derivs[-1].derivative())

    gx = g(x)
    rhs = Fraction(0)
    for mi, coeff in mo_coefficients(n):
        term = Fraction(coeff) * f_derivs[mi.length](gx)
        for ki in mi.k:
            term *= g_derivs[ki](x)
        rhs += term
    return lhs == rhs


def lagrange_reciprocal_identity(points) -> bool:
    """sum_k (1/z_k) prod_{j!=k} 1/(z_k - z_j) == (-1)^(n-1) / prod z_j."""
    zs = [_as_fraction(z) for z in points]
    n = len(zs)
    if not 1 <= n <= 8:
        raise ValueError("need 1..8 points")
    if any(z == 0 for z in zs):
        raise ValueError("points must be nonzero")
    if len(set(zs)) != n:
        raise ValueError("points must be distinct")
    lhs = Fraction(0)
    for k, zk in enumerate(zs):
        term = Fraction(1, 1) / zk
        for j, zj in enumerate(zs):
            if j != k:
                term /= zk - zj
        lhs += term
    prod = Fraction(1)
    for z in zs:
        prod *= z
    rhs = Fraction((-1) ** (n - 1)) / prod
    return lhs == rhs


def gregory_coefficient(k: int) -> Fraction:
    """(-1)^(k+1) * integral_0^1 binomial(s, k) ds, exactly."""
    if k < 1:
        raise ValueError("k must be >= 1")
    poly = Poly([1])
    for i in range(k):
        poly = poly * Poly([-i, 1])
    poly = poly.scale(Fraction(1, math.factorial(k)))
    val = poly.integral(0, 1)
    return val if k % 2 else -val


# ----------------------------------------------------------------------
# identity suite


def _lcg_rationals(count: int, seed: int = 0x9E3779B9):
    # deterministic small rationals for sampling-based members
    state = seed & 0xFFFFFFFFFFFFFFFF
    out = []
    while len(out) < count:
        state = (state * 6364136223846793005 + 1442695040888963407) & 0xFFFFFFFFFFFFFFFF
        num = (state >> 40) % 41 - 20
        den = (state >> 8) % 9 + 1
        out.append(Fraction(num, den))
    return out


def _dbl_binom_12415(n: int) -> bool:
    if not 0 <= n <= 8:
        raise ValueError("n must be in 0..8")
    total = 0
    for j in range(2 * n + 1):
        for k in range(j // 2, j + 1):
            if 2 * k + 1 <= 2 * n + 2 and 0 <= 2 * k - j <= n + 1:
                total += math.comb(2 * n + 2, 2 * k + 1) * math.comb(n + 1, 2 * k - j)
    return total == 2 ** (3 * n + 1)


def _alt_recip_4951(n: int) -> bool:
    if not 1 <= n <= 30:
        raise ValueError("n must be in 1..30")
    p1 = Fraction(0)
    p2 = Fraction(0)
    for k in range(1, n + 1):
        sign = 1 if (k - 1) % 2 == 0 else -1
        p1 += Fraction(sign, k) * math.comb(n, k - 1)
        p2 += Fraction(sign, k) / math.comb(n, k)
    common = Fraction(1 + (-1) ** (n + 1), n + 1)
    return p1 == common and p2 == common


def _quicky_1140a(n: int, m: int) -> bool:
    if not (0 <= n <= 12 and 0 <= m <= 12):
        raise ValueError("n, m must be in 0..12")
    total = 0
    for k in range(n + 1):
        term = math.comb(m + k, k) * math.comb(m + n + 1, n - k)
        total += -term if k % 2 else term
    return total == 1


def _elem_1449(n: int) -> bool:
    if not 1 <= n <= 15:
        raise ValueError("n must be in 1..15")
    total = Fraction(0)
    for k in range(3, 2 * n + 2):
        sign = 1 if (k - 1) % 2 == 0 else -1
        total += sign * math.comb(2 * n + 1, k) * math.comb(k - 1, 2) * Fraction(2) ** (k - 3)
    return total == n * n


def _harmonic_ineq_4900(max_q: int) -> bool:
    if not 1 <= max_q <= 25:
        raise ValueError("bound must be in 1..25")
    # pair inequality H_p + H_q <= 1 + H_{pq}: exact rationals
    h_exact = [Fraction(0)]
    for i in range(1, max_q * max_q + 1):
        h_exact.append(h_exact[-1] + Fraction(1, i))
    for p in range(1, max_q + 1):
        for q in range(p, max_q + 1):
            if h_exact[p] + h_exact[q] > 1 + h_exact[p * q]:
                return False
    # quadruple inequality in binary64 from one shared cumulative table,
    # so the exact-equality tuples (1,1,1,q) come out at margin 0.0
    top = max_q ** 4
    h = [0.0] * (top + 1)
    acc = Kahan()
    for i in range(1, top + 1):
        h[i] = acc.add(1.0 / i).value
    for m in range(1, max_q + 1):
        for n in range(m, max_q + 1):
            hmn = h[m] + h[n]
            for p in range(n, max_q + 1):
                hmnp = hmn + h[p]
                for q in range(p, max_q + 1):
                    if hmnp + h[q] > 3.0 + h[m * n * p * q]:
                        return False
    return True


def _trig_sum_4854(n: int, tol: float = 1e-9) -> bool:
    if not 1 <= n <= 12:
        raise ValueError("n must be in 1..12")
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            acc = Kahan()
            for j in range(1, n + 1):
                v = math.sin(j * r * math.pi / (n + 1)) + math.sin(j * s * math.pi / (n + 1))
                acc.add(v * v)
            expected = 2.0 * (n + 1) if r == s else float(n + 1)
            if abs(acc.value - expected) > tol:
                return False
    return True


def _cheb_partfrac_1296(n: int, tol: float = 1e-9) -> bool:
    if not 1 <= n <= 10:
        raise ValueError("n must be in 1..10")
    # sample between the shared poles t = (2k-1)pi/(2n)
    ts = [(k + 0.5) * math.pi / (2 * n) for k in range(0, min(2 * n, 8))]
    for t in ts:
        lhs = n / math.cos(n * t)
        acc = Kahan()
        for k in range(1, n + 1):
            node = (2 * k - 1) * math.pi / (2 * n)
            term = math.sin(node) / (math.cos(t) - math.cos(node))
            acc.add(term if k % 2 else -term)
        if abs(lhs - acc.value) > tol * (1.0 + abs(lhs)):
            return False
    return True


def _cheb_product_12436(n: int, x, tol: float = 1e-9) -> bool:
    from .specfun import chebyshev

    if not 1 <= n <= 12:
        raise ValueError("n must be in 1..12")
    xf = float(_as_fraction(x))
    prod = 1.0
    for k in range(1, n + 1):
        s = math.sin(k * math.pi / (2 * n))
        prod *= xf + s * s
    rhs = 2.0 ** (-2 * n + 2) * (xf + 1.0) * chebyshev("U", n - 1, 2.0 * xf + 1.0)
    return abs(prod - rhs) <= tol * (1.0 + abs(rhs))


def _cubic_real_root_count(a: Fraction, b: Fraction, expect: int) -> int:
    # distinct real zeros of a z^3 + b z^2 + (a-1) z + b by sign changes
    # on a grid inside the Cauchy bound; the grid is refined when close
    # roots could hide (a sign-change count can only undercount)
    coeffs = [b, a - 1, b, a]

    def val(t: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(coeffs):
            acc = acc * t + c
        return acc

    bound = 1 + max(abs(c) / abs(a) for c in coeffs[:-1])

    def count_on_grid(steps: int) -> int:
        count = 0
        prev_v = val(-bound)
        for i in range(1, steps + 1):
            v = val(-bound + Fraction(2 * bound * i, steps))
            if v == 0:
                count += 1
            elif prev_v != 0 and (prev_v < 0) != (v < 0):
                count += 1
            prev_v = v
        return count

    count = count_on_grid(400)
    for steps in (4000, 40000):
        if count >= expect:
            break
        count = max(count, count_on_grid(steps))
    return count


def _discriminant_2184(samples: int = 50, seed: int = 0x2184) -> bool:
    vals = _lcg_rationals(2 * samples + 40, seed)
    pairs = []
    i = 0
    while len(pairs) < samples and i + 1 < len(vals):
        a, b = vals[i], vals[i + 1]
        i += 2
        if a != 0:
            pairs.append((a, b))
    for a, b in pairs:
        d_expanded = (
            -4 * a**4 - 8 * a**2 * b**2 - 4 * b**4 + 12 * a**3
            - 20 * a * b**2 - 12 * a**2 + b**2 + 4 * a
        )
        d_factored = -4 * (
            (b**2 + a**2 + Fraction(5, 2) * a - Fraction(1, 8)) ** 2
            - 8 * (a + Fraction(1, 8)) ** 3
        )
        if d_expanded != d_factored:
            return False
        if d_expanded != 0:
            want = 3 if d_expanded > 0 else 1
            if _cubic_real_root_count(a, b, want) != want:
                return False
    return True


_SUITE = {
    "dbl_binom_12415": _dbl_binom_12415,
    "alt_recip_4951": _alt_recip_4951,
    "quicky_1140a": _quicky_1140a,
    "elem_1449": _elem_1449,
    "harmonic_ineq_4900": _harmonic_ineq_4900,
    "trig_sum_4854": _trig_sum_4854,
    "cheb_partfrac_1296": _cheb_partfrac_1296,
    "cheb_product_12436": _cheb_product_12436,
    "discriminant_2184": _discriminant_2184,
}


def binomial_identity_suite(name: str, *args, **kwargs) -> bool:
    """Dispatch one named identity check; see the member functions."""
    try:
        member = _SUITE[name]
    except KeyError:
        raise ValueError(f"unknown suite member {name!r}") from None
    return member(*args, **kwargs)


# ----------------------------------------------------------------------
# searches


def primes_upto(n: int):
    """Ascending list of primes <= n (sieve of Eratosthenes)."""
    if n > 10**8:
        raise ValueError("sieve cap is 1e8")
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, n + 1, p)))
    return [i for i in range(2, n + 1) if flags[i]]


def _search_2117(bound: int):
    # (m+1)^n == m! + 1
    out = []
    fact = 1
    for m in range(1, bound + 1):
        fact *= m
        target = fact + 1
        power = m + 1
        n = 1
        while power <= target:
            if power == target:
                out.append((n, m))
            power *= m + 1
            n += 1
    return sorted(out)


def _search_4803(bound: int):
    # p^(2a) + q^(2b) = (2c+1)^2 with p,q prime, a,b in 1..bound
    out = []
    primes = primes_upto(50)
    for p in primes:
        for q in primes:
            if p > q:
                continue
            for a in range(1, bound + 1):
                for b in range(1, bound + 1):
                    s = p ** (2 * a) + q ** (2 * b)
                    r = math.isqrt(s)
                    if r * r == s and r % 2 == 1:
                        out.append((a, b, (r - 1) // 2))
    return sorted(set(out))


def _search_108e(bound: int):
    # n, n+2, n+6, n+8, n+14 all prime
    limit = bound + 14
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [
        n
        for n in range(2, bound + 1)
        if flags[n] and flags[n + 2] and flags[n + 6] and flags[n + 8] and flags[n + 14]
    ]


def _search_4855(bound: int):
    # complete solution set of a^b - b^a == a - b within the bound
    out = []
    for a in range(1, bound + 1):
        for b in range(1, bound + 1):
            if a**b - b**a == a - b:
                out.append((a, b))
    return out


def _search_4811(bound: int):
    # sqrt(n^3 + 1) + sqrt(n + 2) integral
    out = []
    for n in range(1, bound + 1):
        s1 = n**3 + 1
        r1 = math.isqrt(s1)
        if r1 * r1 != s1:
            continue
        s2 = n + 2
        r2 = math.isqrt(s2)
        if r2 * r2 == s2:
            out.append(n)
    return out


def _search_1447(bound: int):
    # (20 + 24 sqrt2)^n == (24 + 20 sqrt2)^m via exact Z[sqrt2] arithmetic
    def zmul(x, y):
        return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])

    lhs_powers = {}
    v = (1, 0)
    for n in range(0, bound + 1):
        lhs_powers[v] = n
        v = zmul(v, (20, 24))
    out = []
    w = (1, 0)
    for m in range(0, bound + 1):
        if w in lhs_powers:
            out.append((lhs_powers[w], m))
        w = zmul(w, (24, 20))
    return sorted(out)


_SEARCHES = {
    "factorial_power_2117": (_search_2117, 30),
    "pow23_square_4803": (_search_4803, 12),
    "quintuplet_108E": (_search_108e, 10**7),
    "pair_4855": (_search_4855, 200),
    "cube_square_4811": (_search_4811, 10**6),
    "norm_1447": (_search_1447, 60),
}


def search_diophantine(kind: str, bound: int):
    """Exhaustive search for the named Diophantine problem within bound."""
    try:
        fn, cap = _SEARCHES[kind]
    except KeyError:
        raise ValueError(f"unknown search kind {kind!r}") from None
    if bound > cap:
        raise ValueError(f"bound {bound} exceeds cap {cap} for {kind}")
    return fn(bound)


# ----------------------------------------------------------------------
# finite-field matrix sums


def gl_sum(q: int, n: int):
    """Sum of all invertible n x n matrices over F_q, as a tuple of rows."""
    if q not in (2, 3) or n not in (1, 2):
        raise ValueError("supported: q in {2,3}, n in {1,2}")
    total = [[0] * n for _ in range(n)]
    count = 0
    for entries in _cartesian(range(q), repeat=n * n):
        m = [list(entries[i * n : (i + 1) * n]) for i in range(n)]
        if n == 1:
            det = m[0][0]
        else:
            det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        if det % q == 0:
            continue
        count += 1
        for i in range(n):
            for j in range(n):
                total[i][j] = (total[i][j] + m[i][j]) % q
    expected_count = 1
    qn = q**n
    power = 1
    for _ in range(n):
        expected_count *= qn - power
        power *= q
    if count != expected_count:
        raise AssertionError("invertible-matrix count mismatch")
    return tuple(tuple(row) for row in total)
