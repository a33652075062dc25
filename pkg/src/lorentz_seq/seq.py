"""Finitely supported nonnegative sequences and the basic operators on them."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DISTRIBUTIONS = ("uniform-gaps", "heavy-tail", "step")


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Seq:
    """A sequence ``x_1, ..., x_N`` followed by an implied zero tail.

    ``values`` is a read-only float64 array; ``N == 0`` is the zero sequence.
    """

    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64).ravel()
        if not np.all(np.isfinite(v)):
            raise ValueError("sequence entries must be finite")
        if np.any(v < 0):
            raise ValueError("sequence entries must be nonnegative")
        object.__setattr__(self, "values", _frozen(v))

    @property
    def N(self) -> int:
        return int(self.values.size)

    def __len__(self) -> int:
        return self.N

    def __iter__(self):
        return iter(self.values.tolist())

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Seq):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def __repr__(self) -> str:
        return f"Seq({self.values.tolist()!r})"

    def scaled(self, c: float) -> "Seq":
        if c < 0:
            raise ValueError("scale factor must be nonnegative")
        return Seq(self.values * c)

    def tolist(self) -> list[float]:
        return self.values.tolist()


def as_seq(x) -> Seq:
    """Coerce a ``Seq`` or any 1-D array-like of nonnegative reals."""
    return x if isinstance(x, Seq) else Seq(x)


def compensated_cumsum(v: np.ndarray) -> np.ndarray:
    """Left-to-right prefix sums with an error-free correction per step.

    The running float sum is corrected by the exact rounding error of each
    addition (TwoSum), so every prefix is accurate to about one rounding
    regardless of length.
    """
    v = np.asarray(v, dtype=np.float64)
    if v.size == 0:
        return v.copy()
    c = np.cumsum(v)
    prev = np.empty_like(c)
    prev[0] = 0.0
    prev[1:] = c[:-1]
    bb = c - prev
    err = (prev - (c - bb)) + (v - bb)
    out = c + np.cumsum(err)
    if np.all(v >= 0):
        # corrections can undo monotonicity by an ulp
        np.maximum.accumulate(out, out=out)
    return out


@dataclass(frozen=True, eq=False)
class PartialSums:
    """Prefix sums ``X_1, ..., X_N`` of a sequence and its total ``X_N``."""

    sums: np.ndarray
    total: float


def decreasing_rearrangement(x) -> Seq:
    """Entries of ``|x|`` sorted in nonincreasing order."""
    if isinstance(x, Seq):
        v = x.values
    else:
        v = np.abs(np.asarray(x, dtype=np.float64).ravel())
    return Seq(np.sort(v)[::-1])


def partial_sums(x) -> PartialSums:
    x = as_seq(x)
    sums = _frozen(compensated_cumsum(x.values))
    total = float(sums[-1]) if sums.size else 0.0
    return PartialSums(sums, total)


def cesaro_prefix(x, m: int) -> np.ndarray:
    """First ``m`` entries of ``Cx``, where ``(Cx)_n = X_n / n``.

    Beyond the support ``Cx`` keeps decaying like ``X_N / n``; it is never
    finitely supported, so norms of ``Cx`` need the exact tail from
    :func:`lorentz_seq.norms.cesaro_weighted_lp_norm`.
    """
    if m < 1:
        raise ValueError("m must be at least 1")
    x = as_seq(x)
    X = partial_sums(x).sums
    out = np.zeros(m)
    k = min(m, x.N)
    out[:k] = X[:k]
    if m > x.N:
        out[k:] = X[-1] if x.N else 0.0
    return out / np.arange(1, m + 1)


def indicator(K: int) -> Seq:
    """The extremal sequence ``u^K``: ones on ``{1..K}``, zero afterwards."""
    if K < 1:
        raise ValueError("K must be at least 1")
    return Seq(np.ones(int(K)))


def random_decreasing(n: int, seed: int, dist: str = "uniform-gaps") -> Seq:
    """A deterministic pseudo-random nonincreasing sequence of support ``n``.

    ``uniform-gaps`` sums i.i.d. uniform decrements, ``heavy-tail`` sorts
    Pareto draws (dominated by the first few entries), and ``step`` is
    piecewise constant on a random number of consecutive blocks.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if dist not in DISTRIBUTIONS:
        raise ValueError(f"unknown distribution {dist!r}; expected one of {DISTRIBUTIONS}")
    rng = np.random.default_rng([int(seed), n, DISTRIBUTIONS.index(dist)])
    if dist == "uniform-gaps":
        gaps = rng.uniform(0.0, 1.0, n)
        v = np.cumsum(gaps[::-1])[::-1]
    elif dist == "heavy-tail":
        v = np.sort(rng.pareto(1.5, n) + 1e-3)[::-1]
    else:
        blocks = int(rng.integers(1, n + 1))
        cuts = np.sort(rng.choice(np.arange(1, n), size=blocks - 1, replace=False)) if blocks > 1 else []
        lengths = np.diff(np.concatenate(([0], cuts, [n]))).astype(int)
        levels = np.sort(rng.uniform(0.05, 1.0, blocks))[::-1]
        v = np.repeat(levels, lengths)
    return Seq(v)
