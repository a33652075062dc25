"""Structured results of inequality checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

MAX_WITNESSES = 3


@dataclass
class CheckReport:
    """Outcome of one check over a set of cases.

    A case is *certified* when the enclosure of the larger side lies entirely
    above the enclosure of the smaller side, *tight* when the two enclosures
    overlap (equality at working precision), and *violated* otherwise. Tight
    cases count as passes but are tallied in ``n_tight``.

    ``worst_margin`` is the least ``(larger - smaller) / |larger|`` seen.
    Reports with ``asserted=False`` record observations that decide nothing.
    """

    check_id: str
    params: dict[str, Any] = field(default_factory=dict)
    n_cases: int = 0
    n_pass: int = 0
    worst_margin: float = float("inf")
    witnesses: list[dict[str, Any]] = field(default_factory=list)
    n_tight: int = 0
    asserted: bool = True
    error: str | None = None
    details: dict[str, Any] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.error is None and self.n_pass == self.n_cases

    def record(self, smaller, larger, witness=None) -> bool:
        """Tally one case ``smaller <= larger``; both are :class:`Enclosure`."""
        self.n_cases += 1
        scale = max(abs(larger.mid), abs(smaller.mid), 1e-300)
        margin = (larger.mid - smaller.mid) / scale
        self.worst_margin = min(self.worst_margin, margin)
        if larger.lo >= smaller.hi:
            self.n_pass += 1
            return True
        if larger.hi >= smaller.lo:
            self.n_pass += 1
            self.n_tight += 1
            return True
        if witness is not None and len(self.witnesses) < MAX_WITNESSES:
            self.witnesses.append({**witness, "smaller": smaller.as_list(), "larger": larger.as_list()})
        return False

    def record_many(self, s_lo, s_hi, l_lo, l_hi, witness=None) -> int:
        """Vectorized :meth:`record` over arrays of bounds; returns the number violated.

        ``witness(i)`` builds the serialized input of case ``i`` on demand.
        """
        s_lo, s_hi, l_lo, l_hi = (np.asarray(v, dtype=np.float64) for v in (s_lo, s_hi, l_lo, l_hi))
        if s_lo.size == 0:
            return 0
        s_mid, l_mid = 0.5 * (s_lo + s_hi), 0.5 * (l_lo + l_hi)
        scale = np.maximum(np.maximum(np.abs(s_mid), np.abs(l_mid)), 1e-300)
        self.worst_margin = min(self.worst_margin, float(((l_mid - s_mid) / scale).min()))
        certified = l_lo >= s_hi
        tight = ~certified & (l_hi >= s_lo)
        bad = np.flatnonzero(~(certified | tight))
        self.n_cases += s_lo.size
        self.n_pass += s_lo.size - bad.size
        self.n_tight += int(tight.sum())
        if witness is not None:
            for i in bad[:MAX_WITNESSES - len(self.witnesses)]:
                self.witnesses.append({**witness(int(i)), "smaller": [float(s_lo[i]), float(s_hi[i])],
                                       "larger": [float(l_lo[i]), float(l_hi[i])]})
        return int(bad.size)

    def merge(self, other: "CheckReport") -> "CheckReport":
        self.n_cases += other.n_cases
        self.n_pass += other.n_pass
        self.n_tight += other.n_tight
        self.worst_margin = min(self.worst_margin, other.worst_margin)
        room = MAX_WITNESSES - len(self.witnesses)
        if room > 0:
            self.witnesses.extend(other.witnesses[:room])
        if other.error and not self.error:
            self.error = other.error
        return self

    def to_dict(self) -> dict[str, Any]:
        return {
            "check_id": self.check_id,
            "params": dict(self.params),
            "n_cases": self.n_cases,
            "n_pass": self.n_pass,
            "worst_margin": self.worst_margin if self.n_cases else None,
            "witnesses": list(self.witnesses),
            "n_tight": self.n_tight,
            "asserted": self.asserted,
            "passed": self.passed,
            "error": self.error,
            "details": dict(self.details),
        }
