"""Closed-form constants and sharpness sweeps along the extremal family ``u^K``."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction

from .enclosure import Enclosure
from .norms import Exponents, power_sum_rel_err
from .tails import DEFAULT_TOL, head_sum, tail_sum_exact, zeta_exact

SWEEP_TARGETS = ("hardy_inc", "B_ratio", "holder_ratio", "S_ratio")
DEFAULT_KS = tuple(2 ** i for i in range(21))


@dataclass(frozen=True)
class SweepRow:
    K: int
    lhs: float
    rhs: float
    ratio: float
    target: float
    gap: float

    def as_dict(self) -> dict:
        return asdict(self)


def _row(K: int, lhs: float, rhs: float, target: float, ratio: float | None = None) -> SweepRow:
    ratio = lhs / rhs if ratio is None else ratio
    return SweepRow(int(K), lhs, rhs, ratio, target, abs(ratio - target) / abs(target))


def _require_increasing_window(p: float, a: float):
    if not (p > 1.0 and 0.0 <= a < p - 1.0):
        raise ValueError(f"need p > 1 and 0 <= a < p - 1, got p={p}, a={a}")


def _require_decreasing_window(p: float, a: float):
    if not (p > 1.0 and -1.0 < a < 0.0):
        raise ValueError(f"need p > 1 and -1 < a < 0, got p={p}, a={a}")


def const_zeta_hardy(p: float, a: float, tol: float = DEFAULT_TOL) -> Enclosure:
    """``zeta(p-a)^(1/p)``, the lower constant for ``||Cx||`` under increasing weights."""
    _require_increasing_window(p, a)
    return zeta_exact(Fraction(p) - Fraction(a), tol).root(p)


def const_S(p: float, a: float) -> float:
    """``((p-a-1)/p)^(1/p)``, the constant claimed for decreasing weights."""
    _require_decreasing_window(p, a)
    return ((p - a - 1.0) / p) ** (1.0 / p)


def const_B(e: Exponents) -> float:
    """``(p')^(-1/s) (s'/p')^(1/s') (s/p)^(1/s)`` for ``p <= s``."""
    if e.p > e.s:
        raise ValueError("B_{p,s} is defined for p <= s")
    p, s, pp, sp = e.p, e.s, e.pPrime, e.sPrime
    return pp ** (-1.0 / s) * (sp / pp) ** (1.0 / sp) * (s / p) ** (1.0 / s)


def const_A(e: Exponents) -> float:
    """``s^(1/s) (s')^(1/s') / (p p')``."""
    p, s, pp, sp = e.p, e.s, e.pPrime, e.sPrime
    return s ** (1.0 / s) * sp ** (1.0 / sp) / (p * pp)


def holder_equal_exponent_bound(s: float) -> float:
    """``s^(-1/s')``, the bound obtained for ``p = s`` by the chain through ``zeta(s')``."""
    return s ** (-1.0 / (s / (s - 1.0)))


def maximal_norm_uK(K: int, e: Exponents, tol: float = DEFAULT_TOL) -> Enclosure:
    """``||u^K||*_{p,s}`` from ``sum_{n<=K} n^(s/p-1) + K^s T_K(s/p'+1)``."""
    ex = e.exact
    q = 1.0 - e.s / e.p
    head = Enclosure.around(head_sum(K, q), power_sum_rel_err(K, q))
    tail = tail_sum_exact(K, ex["s"] / ex["pPrime"] + 1, tol)
    lead = Enclosure.point(float(K) ** e.s, 4)
    return (head + lead * tail).root(e.s)


def dual_norm_uK(K: int, e: Exponents) -> float:
    """``||u^K||'_{p,s}``: ``K Phi_K^(-1/s')`` with ``Phi_K = sum n^-alpha`` when ``p <= s``."""
    if e.p <= e.s:
        return K * head_sum(K, e.alpha) ** (-1.0 / e.sPrime)
    return head_sum(K, 1.0 - e.s / e.p) ** (1.0 / e.s)


def ratio_S_sequence(p: float, a: float, K: int, tol: float = DEFAULT_TOL) -> SweepRow:
    """``R_K = sum_{n<=K} n^a / (sum_{n<=K} n^a + K^p T_K(p-a))`` and its limit ``(p-a-1)/p``."""
    _require_decreasing_window(p, a)
    if K < 1:
        raise ValueError("K must be at least 1")
    head = head_sum(K, -a)
    tail = tail_sum_exact(K, Fraction(p) - Fraction(a), tol).mid
    denom = head + float(K) ** p * tail
    return _row(K, head, denom, (p - a - 1.0) / p)


def _hardy_row(p: float, a: float, K: int, tol: float) -> SweepRow:
    head = Enclosure.around(head_sum(K, -a), power_sum_rel_err(K, a))
    tail = tail_sum_exact(K, Fraction(p) - Fraction(a), tol)
    cu = (head + Enclosure.point(float(K) ** p, 4) * tail).root(p)
    u = head.root(p)
    target = const_zeta_hardy(p, a, tol).mid
    return _row(K, cu.mid, u.mid, target)


def sharpness_sweep(target: str, params, Ks=DEFAULT_KS, tol: float = DEFAULT_TOL) -> list[SweepRow]:
    """Tabulate ratio against its sharp constant for each ``K`` of ``u^K``.

    ``params`` is an :class:`Exponents` for ``B_ratio`` / ``holder_ratio`` and a
    ``(p, a)`` pair for ``hardy_inc`` / ``S_ratio``.
    """
    if target not in SWEEP_TARGETS:
        raise ValueError(f"unknown target {target!r}; expected one of {SWEEP_TARGETS}")
    Ks = sorted(int(K) for K in Ks)
    if not Ks or Ks[0] < 1:
        raise ValueError("K grid must be nonempty with K >= 1")
    rows = []
    if target in ("hardy_inc", "S_ratio"):
        p, a = (float(v) for v in params)
        for K in Ks:
            rows.append(_hardy_row(p, a, K, tol) if target == "hardy_inc" else ratio_S_sequence(p, a, K, tol))
        return rows
    e = params if isinstance(params, Exponents) else Exponents(*params)
    if target == "B_ratio":
        B = const_B(e)
        for K in Ks:
            rows.append(_row(K, dual_norm_uK(K, e), maximal_norm_uK(K, e, tol).mid, B))
    else:
        A = const_A(e)
        conj = e.conjugate()
        for K in Ks:
            rhs = maximal_norm_uK(K, e, tol).mid * maximal_norm_uK(K, conj, tol).mid
            rows.append(_row(K, float(K), rhs, A))
    return rows
