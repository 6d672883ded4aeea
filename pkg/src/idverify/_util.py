"""Shared numeric helpers: compensated summation."""

from __future__ import annotations

from typing import Iterable


class Kahan:
    """Compensated accumulator (Neumaier variant of Kahan summation).

    Keeps a running sum plus a correction term so that long accumulation
    loops lose no more than O(eps) relative accuracy regardless of length.
    """

    __slots__ = ("_s", "_c")

    def __init__(self, start: float = 0.0) -> None:
        self._s = float(start)
        self._c = 0.0

    def add(self, x: float) -> "Kahan":
        t = self._s + x
        if abs(self._s) >= abs(x):
            self._c += (self._s - t) + x
        else:
            self._c += (x - t) + self._s
        self._s = t
        return self

    @property
    def value(self) -> float:
        return self._s + self._c


def kahan_sum(xs: Iterable[float]) -> float:
    acc = Kahan()
    for x in xs:
        acc.add(x)
    return acc.value
