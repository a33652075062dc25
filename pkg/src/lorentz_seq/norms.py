"""Weighted l^p, standard Lorentz, maximal Lorentz and weighted Cesaro norms."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .enclosure import Enclosure
from .seq import as_seq, compensated_cumsum, decreasing_rearrangement
from .tails import DEFAULT_TOL, EPS, tail_sum_exact


@dataclass(frozen=True)
class Exponents:
    """A Lorentz exponent pair ``1 < p, s < inf`` and its derived quantities.

    The float fields are rounded; ``exact`` holds the same quantities as
    rationals of the input floats for certified computations.
    """

    p: float
    s: float

    def __post_init__(self):
        for name in ("p", "s"):
            v = float(getattr(self, name))
            if not (1.0 < v < math.inf):
                raise ValueError(f"{name} must satisfy 1 < {name} < inf, got {v}")
            object.__setattr__(self, name, v)

    @cached_property
    def exact(self) -> dict[str, Fraction]:
        p, s = Fraction(self.p), Fraction(self.s)
        pp, sp = p / (p - 1), s / (s - 1)
        return {"p": p, "s": s, "pPrime": pp, "sPrime": sp, "alpha": 1 - sp / pp}

    @property
    def pPrime(self) -> float:
        return float(self.exact["pPrime"])

    @property
    def sPrime(self) -> float:
        return float(self.exact["sPrime"])

    @property
    def alpha(self) -> float:
        """``1 - s'/p'``; in ``(0, 1)`` exactly when ``p < s``."""
        return float(self.exact["alpha"])

    def conjugate(self) -> "Exponents":
        return Exponents(self.pPrime, self.sPrime)

    def as_dict(self) -> dict[str, float]:
        return {"p": self.p, "s": self.s}


@dataclass(frozen=True)
class PowerWeight:
    """The weight ``n^a``."""

    a: float = 0.0

    def __post_init__(self):
        a = float(self.a)
        if not math.isfinite(a):
            raise ValueError("weight exponent must be finite")
        object.__setattr__(self, "a", a)


def _weight_exp(w) -> float:
    return w.a if isinstance(w, PowerWeight) else float(w)


def power_sum_rel_err(n_max: int, *exponents: float) -> float:
    """Relative error bound for a positive sum of products of powers.

    Covers pow rounding, the rounding of each exponent (up to
    ``|ln n| * ulp(e)``), the products, and fsum.
    """
    logn = math.log(max(n_max, 1)) + 1.0
    return EPS * (6.0 + 2.0 * len(exponents) + 2.0 * logn * sum(abs(e) for e in exponents))


def _check_p(p: float):
    if not p > 1.0:
        raise ValueError(f"p must exceed 1, got {p}")


def _weighted_power_sum(v: np.ndarray, p: float, a: float) -> float:
    n = np.arange(1, v.size + 1, dtype=np.float64)
    return math.fsum(np.power(v, p) * np.power(n, a))


def weighted_lp_norm(x, p: float, w=PowerWeight()) -> float:
    """``(sum_n x_n^p n^a)^(1/p)`` over the support of ``x``."""
    _check_p(p)
    x = as_seq(x)
    return _weighted_power_sum(x.values, p, _weight_exp(w)) ** (1.0 / p)


def weighted_lp_norm_enclosure(x, p: float, w=PowerWeight()) -> Enclosure:
    _check_p(p)
    x = as_seq(x)
    a = _weight_exp(w)
    total = _weighted_power_sum(x.values, p, a)
    return Enclosure.around(total, power_sum_rel_err(x.N, p, a)).root(p)


def _cesaro_assemble(X: np.ndarray, p: float, e_head: float, q_tail: Fraction, tol: float) -> Enclosure:
    """Enclose ``(sum_{n<=N} X_n^p n^e_head + X_N^p T_N(q_tail))^(1/p)``."""
    N = X.size
    if N == 0 or X[-1] == 0.0:
        return Enclosure(0.0, 0.0)
    n = np.arange(1, N + 1, dtype=np.float64)
    head = math.fsum(np.power(X, p) * np.power(n, e_head))
    # X carries ~2 eps from the compensated prefix sums, amplified by p
    rel = power_sum_rel_err(N, p, e_head) + 4.0 * p * EPS
    head_enc = Enclosure.around(head, rel)
    lead = Enclosure.around(float(X[-1]), 4.0 * EPS) ** p
    tail = tail_sum_exact(N, q_tail, tol)
    return (head_enc + lead * tail).root(p)


def cesaro_weighted_lp_norm(x, p: float, w=PowerWeight(), tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclose ``||Cx||_{l^p(n^a)}`` including the infinite tail beyond the support.

    ``sum_{n<=N} X_n^p n^(a-p) + X_N^p T_N(p - a)``, raised to ``1/p``.
    Requires ``p - a > 1`` for convergence.
    """
    _check_p(p)
    a = _weight_exp(w)
    q = Fraction(p) - Fraction(a)
    if not q > 1:
        raise ValueError(f"||Cx|| diverges for p - a = {float(q)} <= 1")
    x = as_seq(x)
    X = compensated_cumsum(x.values)
    return _cesaro_assemble(X, p, a - p, q, tol)


def lorentz_norm(x, e: Exponents) -> float:
    """``(sum_n n^(s/p-1) (x*_n)^s)^(1/s)``."""
    xs = decreasing_rearrangement(x)
    return _weighted_power_sum(xs.values, e.s, e.s / e.p - 1.0) ** (1.0 / e.s)


def lorentz_norm_enclosure(x, e: Exponents) -> Enclosure:
    xs = decreasing_rearrangement(x)
    a = e.s / e.p - 1.0
    total = _weighted_power_sum(xs.values, e.s, a)
    return Enclosure.around(total, power_sum_rel_err(xs.N, e.s, a)).root(e.s)


def lorentz_maximal_norm(x, e: Exponents, tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclose ``||x||*_{p,s} = (sum_n n^(-s/p'-1) X_n^s)^(1/s)`` with ``X`` from ``x*``."""
    xs = decreasing_rearrangement(x)
    X = compensated_cumsum(xs.values)
    ex = e.exact
    q = ex["s"] / ex["pPrime"] + 1
    return _cesaro_assemble(X, e.s, -float(q), q, tol)
