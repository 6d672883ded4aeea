"""Declarative identity registry.

Each entry binds a numeric evaluator (quadrature, summation, root finding,
exact arithmetic) to an expected closed form, a tolerance, and provenance
metadata.  Verification reports the computed value, the distance to the
expected value, and the kernel's own error bound, so a pass certifies both
agreement and an honest error budget.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import datetime, timezone
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

from ..constants import ClosedForm, cf_eval
from ..quad import NumericResult

__all__ = [
    "CATEGORIES",
    "ENGINE_VERSION",
    "EvalContext",
    "Identity",
    "OracleRef",
    "Report",
    "Source",
    "VerificationOutcome",
    "builtin_manifest",
    "check_functional_equation",
    "manifest_selftest",
    "negative_controls",
    "verify",
    "verify_all",
]

ENGINE_VERSION = "1.0.0"

CATEGORIES = (
    "integral",
    "series",
    "double_series",
    "product",
    "limit",
    "root_sum",
    "exact",
    "functional_equation",
    "inequality",
    "extremum",
    "consistency",
)

_PROFILES = ("fast", "full")
_FAST_TOL_FACTOR = 100.0
_FAST_BUDGET_DIVISOR = 10


@dataclass(frozen=True)
class Source:
    """Journal and problem number an entry is anchored to."""

    journal: str
    problem: str

    def __str__(self) -> str:
        return f"{self.journal} {self.problem}"


@dataclass(frozen=True)
class OracleRef:
    """Reference value computed by an independent evaluator (used by
    consistency entries, whose claim is agreement of two computations)."""

    name: str
    fn: Callable[["EvalContext"], NumericResult]


Rhs = Union[ClosedForm, Fraction, OracleRef]


@dataclass(frozen=True)
class EvalContext:
    """Per-run knobs handed to every evaluator.

    tol is the effective tolerance for this entry under the selected profile
    (fast scales tolerances x100); budget_divisor shrinks term counts and
    level budgets in the fast profile.  seed feeds the multistart minimizer
    and nothing else.
    """

    profile: str = "full"
    tol: float = 1e-10
    seed: int = 0

    def __post_init__(self) -> None:
        if self.profile not in _PROFILES:
            raise ValueError(f"unknown profile: {self.profile!r}")
        if not self.tol > 0.0:
            raise ValueError("tol must be > 0")

    @property
    def fast(self) -> bool:
        return self.profile == "fast"

    def terms(self, full_count: int, floor: int = 8) -> int:
        """Series/term budget: full count, or a tenth of it in fast mode."""
        if self.fast:
            return max(floor, full_count // _FAST_BUDGET_DIVISOR)
        return full_count

    def quad_tol(self, fraction: float = 0.5) -> float:
        return max(1e-13, self.tol * fraction)

    def max_level(self) -> int:
        return 10 if self.fast else 12


@dataclass(frozen=True)
class Identity:
    """One verifiable statement: evaluator, expected value, tolerance."""

    id: str
    source: Source
    category: str
    lhs: Callable[[EvalContext], NumericResult]
    rhs: Rhs
    tol: float
    tags: Tuple[str, ...]
    quote: str
    notes: str = ""

    def __post_init__(self) -> None:
        if not self.id:
            raise ValueError("entry id must be nonempty")
        if self.category not in CATEGORIES:
            raise ValueError(f"unknown category {self.category!r} for {self.id}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0 for {self.id}")
        if not self.quote:
            raise ValueError(f"entry {self.id} needs a nonempty quote")
        object.__setattr__(self, "tags", tuple(self.tags))


@dataclass(frozen=True)
class VerificationOutcome:
    """Result of checking one entry; tol is the effective tolerance used."""

    id: str
    status: str
    computed: float
    expected: float
    abs_err: float
    kernel_err: float
    seconds: float
    tol: float


@dataclass(frozen=True)
class Report:
    outcomes: Tuple[VerificationOutcome, ...]
    counts: Mapping[str, int]
    engine_version: str
    profile: str
    timestamp: str
    seed: int


# ----------------------------------------------------------------------
# registry construction

_REGISTRY: Optional[Mapping[str, Identity]] = None


def _collect_entries() -> List[Identity]:
    from . import bounds, exacts, funceqs, integrals, limits, roots, series

    entries: List[Identity] = []
    for module in (integrals, series, limits, roots, exacts, funceqs, bounds):
        entries.extend(module.entries())
    return entries


def builtin_manifest() -> Mapping[str, Identity]:
    """The full built-in registry, keyed by entry id; idempotent."""
    global _REGISTRY
    if _REGISTRY is None:
        entries = _collect_entries()
        table: Dict[str, Identity] = {}
        for entry in sorted(entries, key=lambda e: e.id):
            if entry.id in table:
                raise ValueError(f"duplicate entry id {entry.id}")
            table[entry.id] = entry
        registry = MappingProxyType(table)
        manifest_selftest(registry)
        _REGISTRY = registry
    return _REGISTRY


def manifest_selftest(registry: Optional[Mapping[str, Identity]] = None) -> None:
    """Structural checks run before any kernel: ids unique (by construction),
    quotes nonempty, every non-oracle rhs evaluates to a finite float."""
    if registry is None:
        registry = builtin_manifest()
    for entry in registry.values():
        if not entry.quote.strip():
            raise ValueError(f"entry {entry.id} has a blank quote")
        if isinstance(entry.rhs, OracleRef):
            continue
        value = _expected_static(entry.rhs)
        if not math.isfinite(value):
            raise ValueError(f"entry {entry.id} rhs evaluates to {value}")


def _expected_static(rhs: Rhs) -> float:
    if isinstance(rhs, ClosedForm):
        return cf_eval(rhs)
    if isinstance(rhs, Fraction):
        return float(rhs)
    raise TypeError(f"rhs {rhs!r} has no static value")


# ----------------------------------------------------------------------
# verification

def _effective_tol(entry: Identity, profile: str, tol_scale: float) -> float:
    tol = entry.tol * tol_scale
    if profile == "fast":
        tol *= _FAST_TOL_FACTOR
    return tol


def verify(entry_id: str, profile: str = "full", *, tol_scale: float = 1.0,
           seed: int = 0,
           registry: Optional[Mapping[str, Identity]] = None) -> VerificationOutcome:
    """Check one entry under the given profile.

    Raises KeyError when the id is not registered; evaluator failures are
    captured as status "error", never raised.
    """
    if profile not in _PROFILES:
        raise ValueError(f"unknown profile: {profile!r}")
    if not tol_scale > 0.0:
        raise ValueError("tol_scale must be > 0")
    if registry is None:
        registry = builtin_manifest()
    entry = registry[entry_id]
    tol = _effective_tol(entry, profile, tol_scale)
    ctx = EvalContext(profile=profile, tol=tol, seed=seed)

    start = time.perf_counter()
    try:
        if isinstance(entry.rhs, OracleRef):
            reference = entry.rhs.fn(ctx)
            expected = reference.value
            oracle_err = reference.err
        else:
            expected = _expected_static(entry.rhs)
            oracle_err = 0.0
        result = entry.lhs(ctx)
        computed = result.value
        kernel_err = result.err + oracle_err
        abs_err = abs(computed - expected)
        status = "pass" if abs_err <= tol else "fail"
    except Exception:
        seconds = time.perf_counter() - start
        return VerificationOutcome(entry.id, "error", math.nan, math.nan,
                                   math.inf, math.inf, seconds, tol)
    seconds = time.perf_counter() - start
    return VerificationOutcome(entry.id, status, computed, expected,
                               abs_err, kernel_err, seconds, tol)


_FILTER_KEYS = ("id", "category", "source", "tag")


def _matches(entry: Identity, filters: Mapping[str, str]) -> bool:
    for key, value in filters.items():
        if key == "id":
            if entry.id != value:
                return False
        elif key == "category":
            if entry.category != value:
                return False
        elif key == "source":
            if entry.source.journal.lower() != value.lower():
                return False
        elif key == "tag":
            if value not in entry.tags:
                return False
        else:
            raise ValueError(f"unknown filter key {key!r}; "
                             f"expected one of {_FILTER_KEYS}")
    return True


def verify_all(filter: Union[None, Mapping[str, str],
                             Callable[[Identity], bool]] = None,
               jobs: int = 1, profile: str = "full", *, tol_scale: float = 1.0,
               seed: int = 0,
               registry: Optional[Mapping[str, Identity]] = None) -> Report:
    """Run every matching entry; outcomes are ordered by id regardless of
    execution order, so reports are deterministic for any jobs count."""
    if jobs < 1:
        raise ValueError("jobs must be >= 1")
    if registry is None:
        registry = builtin_manifest()
    if filter is None:
        predicate = lambda entry: True
    elif callable(filter):
        predicate = filter
    else:
        filters = dict(filter)
        for key in filters:
            if key not in _FILTER_KEYS:
                raise ValueError(f"unknown filter key {key!r}; "
                                 f"expected one of {_FILTER_KEYS}")
        predicate = lambda entry: _matches(entry, filters)

    selected = [entry.id for entry in registry.values() if predicate(entry)]

    def run(entry_id: str) -> VerificationOutcome:
        return verify(entry_id, profile, tol_scale=tol_scale, seed=seed,
                      registry=registry)

    if jobs == 1 or len(selected) <= 1:
        outcomes = [run(entry_id) for entry_id in selected]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(run, selected))
    outcomes.sort(key=lambda o: o.id)

    counts = {"pass": 0, "fail": 0, "error": 0}
    for outcome in outcomes:
        counts[outcome.status] += 1
    timestamp = datetime.now(timezone.utc).isoformat(timespec="seconds")
    return Report(tuple(outcomes), MappingProxyType(counts), ENGINE_VERSION,
                  profile, timestamp, seed)


# ----------------------------------------------------------------------
# functional equations

def check_functional_equation(fe: Callable[[object, object], float],
                              solutions: Sequence[object],
                              grid: Sequence[object]) -> float:
    """Max |fe(params, point)| over the family x grid product.

    fe returns the residual of the equation at one point for one family
    member; a domain violation (non-finite residual or a raised ValueError /
    ZeroDivisionError) is reported as ValueError.
    """
    worst = 0.0
    for params in solutions:
        for point in grid:
            try:
                residual = fe(params, point)
            except ZeroDivisionError as exc:
                raise ValueError(f"grid point {point!r} violates domain") from exc
            if not math.isfinite(residual):
                raise ValueError(f"non-finite residual at {point!r}")
            worst = max(worst, abs(residual))
    return worst


def negative_controls() -> Mapping[str, float]:
    """Residuals of each functional equation's documented non-solution on the
    entry's own grid; every value should be well above 0.1."""
    from . import funceqs

    return MappingProxyType(dict(funceqs.negative_control_residuals()))
