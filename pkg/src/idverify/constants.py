"""Scalar constant registry and the ClosedForm expression tree.

Every closed-form right-hand side in the identity corpus is either an exact
rational or a small expression tree over the named constants below.  Trees
serialize to fully parenthesized prefix text, e.g.
``(div (mul 7 zeta3) (mul 8 (pow pi 2)))``, and parse back bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from ._util import Kahan

__all__ = [
    "CONSTANT_NAMES",
    "ClosedForm",
    "ClosedFormError",
    "cf_eval",
    "cf_parse",
    "cf_serialize",
    "const_value",
    "rat",
    "const",
]


class ClosedFormError(ValueError):
    """Domain error or malformed expression."""


# Frozen 17-significant-digit literals.  Validated in the test suite against
# the independent oracles below (pi, e, log2, euler_gamma, sqrt2, sqrt3) and
# against specfun for zeta3, zeta5 and catalan.
_REGISTRY: dict[str, float] = {
    "pi": 3.1415926535897932,
    "e": 2.7182818284590452,
    "euler_gamma": 0.57721566490153286,
    "log2": 0.69314718055994531,
    "catalan": 0.91596559417721902,
    "zeta3": 1.2020569031595943,
    "zeta5": 1.0369277551433699,
    "sqrt2": 1.4142135623730951,
    "sqrt3": 1.7320508075688773,
}

CONSTANT_NAMES = tuple(sorted(_REGISTRY))


def const_value(name: str) -> float:
    """Return a registered constant (>= 1e-15 relative accuracy)."""
    try:
        return _REGISTRY[name]
    except KeyError:
        raise ClosedFormError(f"unknown constant: {name!r}") from None


_UNARY_OPS = (
    "sqrt", "exp", "log", "sin", "cos", "tan",
    "sinh", "cosh", "arctan", "arcsinh",
)
_BINARY_OPS = ("add", "sub", "mul", "div", "pow")


@dataclass(frozen=True)
class ClosedForm:
    """Expression node: rational literal, named constant, or operator.

    kind is one of "rat", "const", "unary", "binary".  Exactly one payload
    field is populated per kind; args holds the children for operator nodes.
    """

    kind: str
    value: Fraction | None = None
    name: str | None = None
    op: str | None = None
    args: tuple["ClosedForm", ...] = field(default=())

    def __post_init__(self) -> None:
        if self.kind == "rat":
            if not isinstance(self.value, Fraction):
                raise ClosedFormError("rational node needs a Fraction value")
        elif self.kind == "const":
            if self.name not in _REGISTRY:
                raise ClosedFormError(f"unknown constant: {self.name!r}")
        elif self.kind == "unary":
            if self.op not in _UNARY_OPS or len(self.args) != 1:
                raise ClosedFormError(f"bad unary node: {self.op!r}")
        elif self.kind == "binary":
            if self.op not in _BINARY_OPS or len(self.args) != 2:
                raise ClosedFormError(f"bad binary node: {self.op!r}")
        else:
            raise ClosedFormError(f"unknown node kind: {self.kind!r}")


def rat(p: int | Fraction, q: int = 1) -> ClosedForm:
    return ClosedForm("rat", value=Fraction(p, q))


def const(name: str) -> ClosedForm:
    return ClosedForm("const", name=name)


def _mk_unary(op: str):
    def build(a: ClosedForm) -> ClosedForm:
        return ClosedForm("unary", op=op, args=(a,))
    build.__name__ = op
    return build


def _mk_binary(op: str):
    def build(a: ClosedForm, b: ClosedForm) -> ClosedForm:
        return ClosedForm("binary", op=op, args=(a, b))
    build.__name__ = op
    return build


sqrt = _mk_unary("sqrt")
exp = _mk_unary("exp")
log = _mk_unary("log")
sin = _mk_unary("sin")
cos = _mk_unary("cos")
tan = _mk_unary("tan")
sinh = _mk_unary("sinh")
cosh = _mk_unary("cosh")
arctan = _mk_unary("arctan")
arcsinh = _mk_unary("arcsinh")
add = _mk_binary("add")
sub = _mk_binary("sub")
mul = _mk_binary("mul")
div = _mk_binary("div")
power = _mk_binary("pow")


def cf_eval(expr: ClosedForm) -> float:
    """Evaluate an expression tree in binary64.

    Accuracy: |result - true| <= 1e-13 * max(1, |true|) for trees of depth
    <= 12 over in-domain values.  Raises ClosedFormError on domain faults
    (log/sqrt of out-of-range values, division by zero, non-integer power of
    a negative base).
    """
    if expr.kind == "rat":
        return float(expr.value)
    if expr.kind == "const":
        return const_value(expr.name)
    if expr.kind == "unary":
        x = cf_eval(expr.args[0])
        op = expr.op
        if op == "sqrt":
            if x < 0.0:
                raise ClosedFormError(f"sqrt of negative value {x}")
            return math.sqrt(x)
        if op == "log":
            if x <= 0.0:
                raise ClosedFormError(f"log of non-positive value {x}")
            return math.log(x)
        if op == "exp":
            return math.exp(x)
        return getattr(math, {"arctan": "atan", "arcsinh": "asinh"}.get(op, op))(x)
    a = cf_eval(expr.args[0])
    b = cf_eval(expr.args[1])
    op = expr.op
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        if b == 0.0:
            raise ClosedFormError("division by zero")
        return a / b
    if a < 0.0 and expr.args[1].kind != "rat":
        raise ClosedFormError("power of negative base with non-exact exponent")
    if a < 0.0 and expr.args[1].value.denominator != 1:
        raise ClosedFormError("non-integer power of negative base")
    if a == 0.0 and b < 0.0:
        raise ClosedFormError("zero to a negative power")
    return math.pow(a, b)


def cf_serialize(expr: ClosedForm) -> str:
    """Fully parenthesized prefix text; inverse of cf_parse."""
    if expr.kind == "rat":
        v = expr.value
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if expr.kind == "const":
        return expr.name
    inner = " ".join(cf_serialize(a) for a in expr.args)
    return f"({expr.op} {inner})"


def cf_parse(text: str) -> ClosedForm:
    """Parse the prefix grammar produced by cf_serialize."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def parse_expr() -> ClosedForm:
        nonlocal pos
        if pos >= len(tokens):
            raise ClosedFormError("unexpected end of expression")
        tok = tokens[pos]
        pos += 1
        if tok == "(":
            if pos >= len(tokens):
                raise ClosedFormError("unexpected end after '('")
            op = tokens[pos]
            pos += 1
            args = []
            while pos < len(tokens) and tokens[pos] != ")":
                args.append(parse_expr())
            if pos >= len(tokens):
                raise ClosedFormError("missing ')'")
            pos += 1
            if op in _UNARY_OPS:
                if len(args) != 1:
                    raise ClosedFormError(f"{op} takes 1 argument, got {len(args)}")
                return ClosedForm("unary", op=op, args=tuple(args))
            if op in _BINARY_OPS:
                if len(args) != 2:
                    raise ClosedFormError(f"{op} takes 2 arguments, got {len(args)}")
                return ClosedForm("binary", op=op, args=tuple(args))
            raise ClosedFormError(f"unknown operator: {op!r}")
        if tok == ")":
            raise ClosedFormError("unexpected ')'")
        if tok in _REGISTRY:
            return const(tok)
        try:
            return rat(Fraction(tok))
        except (ValueError, ZeroDivisionError):
            raise ClosedFormError(f"bad token: {tok!r}") from None

    result = parse_expr()
    if pos != len(tokens):
        raise ClosedFormError(f"trailing tokens after expression: {tokens[pos:]}")
    return result


# ---------------------------------------------------------------------------
# Independent oracles, used only by the test suite to validate the frozen
# literals.  Each uses an elementary series with a proven remainder bound.

def oracle_pi() -> float:
    # Machin: pi = 16 arctan(1/5) - 4 arctan(1/239).
    return 16.0 * _arctan_recip(5) - 4.0 * _arctan_recip(239)


def _arctan_recip(q: int) -> float:
    # arctan(1/q) by Taylor series; terms fall by q^-2 per step.
    acc = Kahan()
    x = 1.0 / q
    x2 = x * x
    term = x
    k = 0
    while abs(term) > 1e-20:
        acc.add(term / (2 * k + 1))
        term = -term * x2
        k += 1
    return acc.value


def oracle_e() -> float:
    acc = Kahan()
    term = 1.0
    for n in range(1, 25):
        acc.add(term)
        term /= n
    return acc.value


def oracle_log2() -> float:
    # log 2 = 2 artanh(1/3) = 2 sum (1/3)^(2k+1) / (2k+1).
    acc = Kahan()
    t = 1.0 / 3.0
    k = 0
    while t > 1e-20:
        acc.add(t / (2 * k + 1))
        t /= 9.0
        k += 1
    return 2.0 * acc.value


def oracle_euler_gamma() -> float:
    # H_n - log n with Euler-Maclaurin correction terms through n^-8.
    n = 64
    acc = Kahan()
    for j in range(1, n + 1):
        acc.add(1.0 / j)
    h = acc.value
    n2 = float(n) * n
    corr = -1.0 / (2 * n) + 1.0 / (12 * n2) - 1.0 / (120 * n2 * n2) \
        + 1.0 / (252 * n2 * n2 * n2) - 1.0 / (240 * n2 * n2 * n2 * n2)
    return h - math.log(n) + corr


def oracle_sqrt(m: int) -> float:
    # Newton iteration in exact rational arithmetic, then one rounding.
    x = Fraction(m, 1)
    for _ in range(8):
        x = (x + m / x) / 2
    return float(x)
