"""Closed floating-point intervals certified to contain an exact real value.

No directed rounding is used. Every arithmetic stage instead widens its
result outward by a few units in the last place, which dominates the
rounding error of one correctly-rounded (or faithfully rounded) operation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: outward padding applied per arithmetic stage, in ulps
STAGE_ULPS = 4


def pad_down(v, ulps=STAGE_ULPS):
    """Move ``v`` toward -inf by ``ulps`` units in the last place (scalar or array)."""
    if isinstance(v, np.ndarray):
        return v - ulps * np.spacing(np.abs(v))
    return v - ulps * math.ulp(v)


def pad_up(v, ulps=STAGE_ULPS):
    """Move ``v`` toward +inf by ``ulps`` units in the last place (scalar or array)."""
    if isinstance(v, np.ndarray):
        return v + ulps * np.spacing(np.abs(v))
    return v + ulps * math.ulp(v)


@dataclass(frozen=True)
class Enclosure:
    """The closed interval ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("enclosure bounds must not be NaN")
        if lo > hi:
            raise ValueError(f"empty enclosure [{lo!r}, {hi!r}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def point(cls, value: float, ulps: int = 0) -> "Enclosure":
        """Enclose a computed value, widened by ``ulps`` on each side."""
        value = float(value)
        if ulps == 0:
            return cls(value, value)
        return cls(pad_down(value, ulps), pad_up(value, ulps))

    @classmethod
    def around(cls, value: float, rel_err: float) -> "Enclosure":
        """Enclose ``value`` with a relative error bound ``rel_err``."""
        value = float(value)
        r = abs(value) * rel_err
        return cls(pad_down(value - r, 1), pad_up(value + r, 1))

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi

    def overlaps(self, other: "Enclosure") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Enclosure") -> "Enclosure":
        lo, hi = max(self.lo, other.lo), min(self.hi, other.hi)
        if lo > hi:
            raise ValueError(f"disjoint enclosures {self} and {other}")
        return Enclosure(lo, hi)

    def padded(self, ulps: int = STAGE_ULPS) -> "Enclosure":
        return Enclosure(pad_down(self.lo, ulps), pad_up(self.hi, ulps))

    def __add__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(pad_down(self.lo + other.lo), pad_up(self.hi + other.hi))
        other = float(other)
        return Enclosure(pad_down(self.lo + other), pad_up(self.hi + other))

    __radd__ = __add__

    def __sub__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            return Enclosure(pad_down(self.lo - other.hi), pad_up(self.hi - other.lo))
        other = float(other)
        return Enclosure(pad_down(self.lo - other), pad_up(self.hi - other))

    def __mul__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            c = (self.lo * other.lo, self.lo * other.hi, self.hi * other.lo, self.hi * other.hi)
        else:
            other = float(other)
            c = (self.lo * other, self.hi * other)
        return Enclosure(pad_down(min(c)), pad_up(max(c)))

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Enclosure":
        if isinstance(other, Enclosure):
            if other.lo <= 0.0 <= other.hi:
                raise ZeroDivisionError(f"division by enclosure containing 0: {other}")
            c = (self.lo / other.lo, self.lo / other.hi, self.hi / other.lo, self.hi / other.hi)
        else:
            other = float(other)
            c = (self.lo / other, self.hi / other)
        return Enclosure(pad_down(min(c)), pad_up(max(c)))

    def __pow__(self, q: float) -> "Enclosure":
        """Real power of a nonnegative enclosure (monotone in the base)."""
        if self.lo < 0.0:
            raise ValueError("power of an enclosure requires a nonnegative base")
        q = float(q)
        a, b = self.lo ** q, self.hi ** q
        lo, hi = (a, b) if q >= 0 else (b, a)
        return Enclosure(max(pad_down(lo), 0.0), pad_up(hi))

    def root(self, p: float) -> "Enclosure":
        """``p``-th root; also covers the rounding of the exponent ``1/p``."""
        q = 1.0 / p
        base = self ** q
        qerr = 0.5 * math.ulp(q)
        rel = qerr * max(abs(math.log(v)) for v in (self.lo, self.hi) if v > 0.0) if self.hi > 0.0 else 0.0
        if rel == 0.0:
            return base
        return Enclosure(max(base.lo * (1.0 - 2.0 * rel), 0.0), base.hi * (1.0 + 2.0 * rel))

    def __repr__(self) -> str:
        return f"Enclosure({self.lo!r}, {self.hi!r})"

    def as_list(self) -> list[float]:
        return [self.lo, self.hi]
