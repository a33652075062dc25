"""Rigorous enclosures of power sums: heads, tails and the zeta function.

The tail ``sum_{k>n} k^-q`` is summed explicitly up to a cutoff ``m`` and
the remainder ``sum_{k>m} k^-q`` is bracketed twice. The first bracket comes
from the integral comparison ``int_{m+1}^inf <= rem <= int_m^inf``. The
second, much tighter one comes from Euler-Maclaurin: for the completely
monotone ``t^-q`` the error after ``J`` correction terms has the sign of
term ``J+1`` and is smaller in magnitude, so two consecutive truncations
enclose the remainder.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

import numpy as np

from .enclosure import Enclosure, pad_down, pad_up

DEFAULT_TOL = 1e-12
EPS = 2.0 ** -52

# B_2, B_4, ..., B_14
_BERNOULLI = (
    Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42), Fraction(-1, 30),
    Fraction(5, 66), Fraction(-691, 2730), Fraction(7, 6),
)
_EM_TERMS = 5
_MAX_EXPLICIT = 1 << 24


class TailSumError(ArithmeticError):
    """The requested tolerance cannot be certified within the work budget."""


def _em_coefficients():
    return tuple(float(b / math.factorial(2 * j)) for j, b in enumerate(_BERNOULLI, start=1))


_EM_COEF = _em_coefficients()


def head_sum(n: int, q: float) -> float:
    """``sum_{k=1}^n k^-q`` with compensated (exactly rounded) summation."""
    if n <= 0:
        return 0.0
    k = np.arange(1, int(n) + 1, dtype=np.float64)
    return math.fsum(np.power(k, -float(q)))


def head_sum_enclosure(n: int, q: float) -> Enclosure:
    if n <= 0:
        return Enclosure(0.0, 0.0)
    # each term carries <= 1 ulp from pow, fsum adds half an ulp
    return Enclosure.point(head_sum(n, q), 4)


def _range_sum(n: int, m: int, q: float) -> float:
    if m <= n:
        return 0.0
    k = np.arange(n + 1, m + 1, dtype=np.float64)
    return math.fsum(np.power(k, -q))


def _remainder(a: int, q: float) -> Enclosure:
    """Enclose ``sum_{k>=a} k^-q`` for ``a >= 2``."""
    af = float(a)
    integral = af ** (1.0 - q) / (q - 1.0)
    integral_prev = (af - 1.0) ** (1.0 - q) / (q - 1.0)
    base = integral + 0.5 * af ** -q
    mag = abs(integral) + abs(0.5 * af ** -q)
    rising = q
    power = af ** (-q - 1.0)
    total = base
    last = 0.0
    for j in range(1, _EM_TERMS + 2):
        term = _EM_COEF[j - 1] * rising * power
        if j <= _EM_TERMS:
            total += term
            mag += abs(term)
        else:
            last = term
        rising *= (q + 2 * j - 1) * (q + 2 * j)
        power /= af * af
    lo, hi = sorted((total, total + last))
    err = 8.0 * EPS * (mag + abs(last))
    em = Enclosure(pad_down(lo - err), pad_up(hi + err))
    crude = Enclosure(pad_down(integral, 8), pad_up(integral_prev, 8))
    return em.intersect(crude)


@lru_cache(maxsize=65536)
def _tail_sum_cached(n: int, q: float, tol: float) -> Enclosure:
    m = max(n, int(2 * q) + 16)
    while True:
        explicit = _range_sum(n, m, q)
        rem = _remainder(m + 1, q)
        lo = pad_down(explicit) + rem.lo if explicit else rem.lo
        hi = pad_up(explicit) + rem.hi if explicit else rem.hi
        enc = Enclosure(pad_down(lo, 1), pad_up(hi, 1))
        if enc.width <= tol:
            return enc
        if m - n > _MAX_EXPLICIT:
            raise TailSumError(
                f"tail sum T_{n}({q}) reached width {enc.width:.3g} > tol {tol:.3g}"
            )
        m = n + 2 * max(m - n, 16)


def tail_sum(n: int, q: float, tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclose ``T_n(q) = sum_{k=n+1}^inf k^-q``, width at most ``tol``.

    Raises
    ------
    ValueError
        if ``q <= 1`` (divergent series) or the arguments are out of range.
    TailSumError
        if the tolerance is below what double precision can certify.
    """
    q = float(q)
    if not q > 1.0:
        raise ValueError(f"tail sum diverges for q = {q} <= 1")
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not tol > 0:
        raise ValueError("tol must be positive")
    return _tail_sum_cached(int(n), q, float(tol))


def tail_sum_between(n: int, q_lo: float, q_hi: float, tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclose ``T_n(q)`` uniformly for every exponent ``q`` in ``[q_lo, q_hi]``."""
    if q_lo == q_hi:
        return tail_sum(n, q_lo, tol)
    # T_n is decreasing in q
    return Enclosure(tail_sum(n, q_hi, tol).lo, tail_sum(n, q_lo, tol).hi)


def exact_exponent(value: Fraction | float) -> tuple[float, float]:
    """Float bracket ``[lo, hi]`` around an exponent known as an exact rational.

    Exponents derived from the user's ``p, s, a`` (``p - a``, ``s/p' + 1`` ...)
    are exact rationals of the input floats; rounding them must not break
    certification.
    """
    if isinstance(value, float):
        return value, value
    f = float(value)
    if Fraction(f) == value:
        return f, f
    return math.nextafter(f, -math.inf), math.nextafter(f, math.inf)


def tail_sum_exact(n: int, q: Fraction, tol: float = DEFAULT_TOL) -> Enclosure:
    """``T_n(q)`` for an exact rational exponent ``q``."""
    lo, hi = exact_exponent(q)
    return tail_sum_between(n, lo, hi, tol)


def tail_sum_table(n_max: int, q: float, tol: float = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Lower and upper bounds of ``T_n(q)`` for every ``n = 0..n_max``.

    One certified tail at ``n_max`` plus compensated suffix sums.
    """
    from .seq import compensated_cumsum

    base = tail_sum(n_max, q, tol)
    k = np.arange(1, n_max + 1, dtype=np.float64)
    suffix = compensated_cumsum(np.power(k, -q)[::-1])[::-1]
    explicit = np.concatenate((suffix, [0.0]))
    lo = pad_down(pad_down(explicit, 4) + base.lo, 1)
    hi = pad_up(pad_up(explicit, 4) + base.hi, 1)
    return lo, hi


def zeta(q: float, tol: float = DEFAULT_TOL) -> Enclosure:
    """Enclose the Riemann zeta function ``zeta(q)`` for real ``q > 1``."""
    q = float(q)
    if not q > 1.0:
        raise ValueError(f"zeta({q}) is outside the convergent range q > 1")
    m = 8
    return head_sum_enclosure(m, q) + tail_sum(m, q, tol / 2)


def zeta_exact(q: Fraction, tol: float = DEFAULT_TOL) -> Enclosure:
    lo, hi = exact_exponent(q)
    if lo == hi:
        return zeta(lo, tol)
    return Enclosure(zeta(hi, tol).lo, zeta(lo, tol).hi)
