"""Enclosure-certified checks of every inequality, and the suite that runs them.

Each check compares a certified lower bound of the larger side with a
certified upper bound of the smaller side (see :class:`CheckReport`).
Checks that only observe, because the direction under test is open or
the hypothesis is ambiguous, carry ``asserted=False``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .constants import const_A, const_B, const_S, const_zeta_hardy, holder_equal_exponent_bound, sharpness_sweep
from .dual import dual_norm
from .enclosure import Enclosure, pad_down, pad_up
from .level import WeightSeq, level_sequence, verify_level_properties
from .norms import (
    Exponents,
    cesaro_weighted_lp_norm,
    lorentz_maximal_norm,
    lorentz_norm_enclosure,
    power_sum_rel_err,
    weighted_lp_norm_enclosure,
)
from .report import CheckReport
from .seq import DISTRIBUTIONS, Seq, as_seq, compensated_cumsum, indicator, random_decreasing
from .tails import DEFAULT_TOL, EPS, exact_exponent, tail_sum_table, zeta_exact

REGIMES = ("increasing_weight", "decreasing_weight")

# fixed aggregation order of the suite
CHECK_ORDER = (
    "pointwise_lemmas",
    "pooling_inequality",
    "reversed_hardy_increasing",
    "reversed_hardy_decreasing",
    "norm_equivalence_p_le_s",
    "norm_equivalence_s_lt_p",
    "dual_maximal_B",
    "dual_maximal_B_reversed",
    "dual_maximal_pprime_s_lt_p",
    "dual_maximal_pprime_p_lt_s",
    "maximal_dual_pprime",
    "holder_A",
    "holder_A_equal_exponents",
    "holder_equal_exponent_bound",
    "level_properties",
    "sharpness",
)

# the suite groups checks under these names for --only
SUITE_GROUPS = ("pointwise", "pooling", "hardy", "equivalence", "dual", "holder", "level", "sharpness")


def _enc(value: float, rel: float) -> Enclosure:
    return Enclosure.around(value, rel)


def _require_decreasing(x: Seq):
    if x.N > 1 and np.any(np.diff(x.values) > 0):
        raise ValueError("x must be nonincreasing")


def _require_hardy_window(p: float, a: float, regime: str):
    if regime == "increasing_weight":
        if not (p > 1.0 and 0.0 <= a < p - 1.0):
            raise ValueError(f"increasing_weight needs p > 1 and 0 <= a < p - 1, got p={p}, a={a}")
    elif regime == "decreasing_weight":
        if not (p > 1.0 and -1.0 < a < 0.0):
            raise ValueError(f"decreasing_weight needs p > 1 and -1 < a < 0, got p={p}, a={a}")
    else:
        raise ValueError(f"unknown regime {regime!r}; expected one of {REGIMES}")


def _witness(x: Seq, limit: int = 64) -> dict:
    return {"N": x.N, "x": x.values[:limit].tolist()}


# ---------------------------------------------------------------- pointwise

def _power_step(n: np.ndarray, p: float) -> tuple[np.ndarray, np.ndarray]:
    """``n^p - (n-1)^p`` without cancellation, and a relative error bound."""
    z = p * np.log1p(-1.0 / n)
    d = -np.power(n, p) * np.expm1(z)
    return d, EPS * (6.0 + 3.0 * np.abs(z))


def _tail_bounds(n_max: int, q: Fraction, tol: float):
    """Bounds on ``T_n(q)``, ``n = 0..n_max``; ``T`` is decreasing in ``q``."""
    q_lo, q_hi = exact_exponent(q)
    lo, hi = tail_sum_table(n_max, q_hi, tol)
    if q_lo != q_hi:
        hi = tail_sum_table(n_max, q_lo, tol)[1]
    return lo, hi


def default_pointwise_grid(n_max: int = 500) -> dict:
    ps = tuple(round(1.1 + 0.1 * i, 10) for i in range(50))
    return {
        "n_max": n_max,
        "points": tuple((p, f * (p - 1.0)) for p in ps for f in (0.0, 0.25, 0.5, 0.75)),
        "exponents": tuple((p, s) for p in (1.25, 1.5, 2.0, 3.0, 5.0) for s in (1.25, 1.5, 2.0, 3.0, 5.0)),
    }


def check_pointwise_lemmas(grid: dict | None = None, tol: float = DEFAULT_TOL) -> CheckReport:
    """Grid check of three pointwise tail inequalities.

    ``tail_product_bound``: ``(n^p - (n-1)^p - 1) T_{n-1}(p) >= S_{n-1}(p)``;
    ``weighted_tail_product_bound``: the same with weight ``n^a``, i.e.
    ``(n^p - (n-1)^p - n^a) T_{n-1}(p-a) >= n^a S_{n-1}(p-a)`` (``a = 0``
    points are tallied under the first);
    ``tail_integral_bound``: ``n^(s/p') T_{n-1}(s/p'+1) > p'/s``.
    ``grid`` has ``n_max``, ``points`` ``(p, a)`` and ``exponents`` ``(p, s)``.
    """
    grid = default_pointwise_grid() if grid is None else grid
    n_max = int(grid.get("n_max", 500))
    report = CheckReport("pointwise_lemmas", {"n_max": n_max, "tol": tol})
    subs = {k: CheckReport(k) for k in ("tail_product_bound", "weighted_tail_product_bound", "tail_integral_bound")}
    n = np.arange(2, n_max + 1, dtype=np.float64)
    for p, a in grid.get("points", ()):
        p, a = float(p), float(a)
        if not (p > 1.0 and 0.0 <= a < p - 1.0):
            raise ValueError(f"pointwise grid needs p > 1 and 0 <= a < p - 1, got p={p}, a={a}")
        q = Fraction(p) - Fraction(a)
        T_lo, T_hi = _tail_bounds(n_max, q, tol)
        T_lo, T_hi = T_lo[1:n_max], T_hi[1:n_max]  # T_{n-1}, n = 2..n_max
        qf = float(q)
        k = np.arange(1, n_max, dtype=np.float64)
        S = compensated_cumsum(np.power(k, -qf))  # S_{n-1}
        s_rel = power_sum_rel_err(n_max, qf)
        d, d_rel = _power_step(n, p)
        na = np.power(n, a)
        na_rel = EPS * (2.0 + 2.0 * np.log(n) * abs(a))
        F = d - na
        F_err = d * d_rel + na * na_rel + EPS * np.abs(F)
        F_lo, F_hi = F - F_err, F + F_err
        l_lo = pad_down(np.where(F_lo >= 0, F_lo * T_lo, F_lo * T_hi))
        l_hi = pad_up(np.where(F_hi >= 0, F_hi * T_hi, F_hi * T_lo))
        r_lo = pad_down(na * (1.0 - na_rel) * S * (1.0 - s_rel))
        r_hi = pad_up(na * (1.0 + na_rel) * S * (1.0 + s_rel))
        sub = subs["tail_product_bound" if a == 0.0 else "weighted_tail_product_bound"]
        sub.record_many(r_lo, r_hi, l_lo, l_hi, lambda i, p=p, a=a: {"n": i + 2, "p": p, "a": a})
    for p, s in grid.get("exponents", ()):
        e = Exponents(p, s)
        ex = e.exact
        r = ex["s"] / ex["pPrime"]
        T_lo, T_hi = _tail_bounds(n_max, r + 1, tol)
        m = np.arange(1, n_max + 1, dtype=np.float64)
        rf = float(r)
        nr = np.power(m, rf)
        nr_rel = EPS * (4.0 + 2.0 * np.log(m) * (abs(rf) + 1.0))
        l_lo = pad_down(nr * (1.0 - nr_rel) * T_lo[:n_max])
        l_hi = pad_up(nr * (1.0 + nr_rel) * T_hi[:n_max])
        bound = float(1 / r)
        r_lo = np.full(n_max, pad_down(bound, 1))
        r_hi = np.full(n_max, pad_up(bound, 1))
        subs["tail_integral_bound"].record_many(r_lo, r_hi, l_lo, l_hi,
                                                lambda i, p=p, s=s: {"n": i + 1, "p": p, "s": s})
    for key, sub in subs.items():
        report.merge(sub)
        report.details[key] = {"n_cases": sub.n_cases, "n_pass": sub.n_pass,
                               "worst_margin": sub.worst_margin if sub.n_cases else None}
    return report


# ------------------------------------------------------------------ pooling

def check_pooling_lemma(x, p: float, a: float) -> CheckReport:
    """For every prefix length ``n >= 2``:
    ``X_n^p - sum_{k<=n} k^a x_k^p >= sum_{2<=k<=n} (k^p - (k-1)^p - k^a) x_k^p``.
    """
    x = as_seq(x)
    p, a = float(p), float(a)
    if not (p > 1.0 and 0.0 <= a < p - 1.0):
        raise ValueError(f"pooling inequality needs p > 1 and 0 <= a < p - 1, got p={p}, a={a}")
    _require_decreasing(x)
    if x.N < 2:
        raise ValueError("pooling inequality needs support length >= 2")
    report = CheckReport("pooling_inequality", {"p": p, "a": a})
    v = x.values
    N = x.N
    k = np.arange(1, N + 1, dtype=np.float64)
    vp = np.power(v, p)
    ka = np.power(k, a)
    X = compensated_cumsum(v)
    lead = np.power(X, p)
    W = compensated_cumsum(ka * vp)
    d = np.zeros(N)
    d_rel = np.zeros(N)
    d[1:], d_rel[1:] = _power_step(k[1:], p)
    terms = (d - ka) * vp
    terms[0] = 0.0
    R = compensated_cumsum(terms)
    mag = compensated_cumsum((d + ka) * vp)
    rel = EPS * (16.0 + 4.0 * p * np.log(k + 1.0))
    lhs = lead - W
    lhs_err = rel * (lead + W)
    rhs_err = rel * mag + d_rel.max() * mag
    report.record_many(pad_down(R - rhs_err)[1:], pad_up(R + rhs_err)[1:],
                       pad_down(lhs - lhs_err)[1:], pad_up(lhs + lhs_err)[1:],
                       lambda i: {**_witness(x), "prefix": i + 2})
    return report


# ------------------------------------------------------------ Hardy / Cesaro

def check_reversed_hardy(x, p: float, a: float, regime: str) -> CheckReport:
    """``||Cx||_{l^p(n^a)} >= c ||x||_{l^p(n^a)}`` for nonincreasing ``x``.

    ``increasing_weight`` (``0 <= a < p-1``): ``c = zeta(p-a)^(1/p)``.
    ``decreasing_weight`` (``-1 < a < 0``): the claimed form
    ``((p-a-1)/p)^(1/p) ||Cx|| >= ||x||``.
    """
    p, a = float(p), float(a)
    _require_hardy_window(p, a, regime)
    x = as_seq(x)
    _require_decreasing(x)
    check_id = "reversed_hardy_increasing" if regime == "increasing_weight" else "reversed_hardy_decreasing"
    report = CheckReport(check_id, {"p": p, "a": a})
    cx = cesaro_weighted_lp_norm(x, p, a)
    nx = weighted_lp_norm_enclosure(x, p, a)
    if regime == "increasing_weight":
        report.record(const_zeta_hardy(p, a) * nx, cx, _witness(x))
    else:
        report.record(nx, _enc(const_S(p, a), 8 * EPS) * cx, _witness(x))
    return report


# ------------------------------------------------------------ equivalences

def check_norm_equivalences(x, e: Exponents) -> list[CheckReport]:
    """Two-sided estimate of ``||x||*`` by ``||x||``.

    ``p <= s``: ``zeta(s/p'+1)^(1/s) ||x|| <= ||x||* <= p' ||x||``.
    ``s < p``: ``p'^(1/s) ||x|| <= ||x||* <= p' ||x||``.
    Returns one report per side, both under the regime's check id.
    """
    x = as_seq(x)
    ex = e.exact
    star = lorentz_maximal_norm(x, e)
    norm = lorentz_norm_enclosure(x, e)
    if e.p <= e.s:
        check_id = "norm_equivalence_p_le_s"
        c_low = zeta_exact(ex["s"] / ex["pPrime"] + 1).root(e.s)
    else:
        check_id = "norm_equivalence_s_lt_p"
        c_low = _enc(e.pPrime, 2 * EPS).root(e.s)
    c_up = _enc(e.pPrime, 2 * EPS)
    low = CheckReport(check_id, {**e.as_dict(), "side": "lower"})
    low.record(c_low * norm, star, _witness(x))
    up = CheckReport(check_id, {**e.as_dict(), "side": "upper"})
    up.record(star, c_up * norm, _witness(x))
    return [low, up]


# -------------------------------------------------------------- dual bounds

def check_dual_bounds(x, e: Exponents) -> list[CheckReport]:
    """Upper and lower estimates of ``||x||'`` by ``||x||*``.

    * ``dual_maximal_B`` (``p <= s``): ``||x||' <= B ||x||*``, asserted;
      ``dual_maximal_B_reversed`` records ``B ||x||* <= ||x||'`` as data.
    * ``||x||' <= (p')^(-1/s) ||x||*`` under either ordering of ``p`` and
      ``s`` (``dual_maximal_pprime_s_lt_p`` / ``_p_lt_s``), recorded as data
      since the hypothesis is ambiguous.
    * ``maximal_dual_pprime``: ``||x||* <= p' ||x||'``, asserted.
    """
    x = as_seq(x)
    star = lorentz_maximal_norm(x, e)
    # the dual norm is built from pooled sums and a Lorentz norm of them
    dual = _enc(dual_norm(x, e), power_sum_rel_err(max(x.N, 1), e.s, e.s / e.p) + 64 * EPS)
    params = e.as_dict()
    out = []
    if e.p <= e.s:
        B = _enc(const_B(e), 16 * EPS)
        r = CheckReport("dual_maximal_B", params)
        r.record(dual, B * star, _witness(x))
        out.append(r)
        r = CheckReport("dual_maximal_B_reversed", params, asserted=False)
        r.record(B * star, dual, _witness(x))
        out.append(r)
    if e.p != e.s:
        cid = "dual_maximal_pprime_s_lt_p" if e.s < e.p else "dual_maximal_pprime_p_lt_s"
        r = CheckReport(cid, params, asserted=False)
        r.record(dual, _enc(e.pPrime ** (-1.0 / e.s), 8 * EPS) * star, _witness(x))
        out.append(r)
    r = CheckReport("maximal_dual_pprime", params)
    r.record(star, _enc(e.pPrime, 2 * EPS) * dual, _witness(x))
    out.append(r)
    return out


# ------------------------------------------------------------------ Holder

def _pairing(x: Seq, y: Seq) -> Enclosure:
    m = min(x.N, y.N)
    prod = x.values[:m] * y.values[:m]
    return _enc(math.fsum(prod), 2 * EPS)


def check_holder(x, y, e: Exponents) -> list[CheckReport]:
    """``sum x_n y_n <= A ||x||*_{p,s} ||y||*_{p',s'}``.

    Asserted for ``p != s``. At ``p = s`` both ``A_{s,s}`` and the weaker
    ``s^(-1/s')`` are recorded as data, with the observed ratio.
    """
    x, y = as_seq(x), as_seq(y)
    pair = _pairing(x, y)
    prod = lorentz_maximal_norm(x, e) * lorentz_maximal_norm(y, e.conjugate())
    ratio = pair.mid / prod.mid if prod.mid > 0 else 0.0
    wit = {"x": x.values[:64].tolist(), "y": y.values[:64].tolist()}
    A = _enc(const_A(e), 16 * EPS)
    params = e.as_dict()
    if e.p != e.s:
        r = CheckReport("holder_A", params)
        r.record(pair, A * prod, wit)
        r.details["max_ratio"] = ratio
        return [r]
    r1 = CheckReport("holder_A_equal_exponents", params, asserted=False)
    r1.record(pair, A * prod, wit)
    r1.details["max_ratio"] = ratio
    r2 = CheckReport("holder_equal_exponent_bound", params, asserted=False)
    r2.record(pair, _enc(holder_equal_exponent_bound(e.s), 8 * EPS) * prod, wit)
    r2.details["max_ratio"] = ratio
    return [r1, r2]


# ------------------------------------------------------------------- level

def check_level_sequence(x, phi: WeightSeq, tol: float = 1e-9) -> CheckReport:
    """The three level-sequence conditions plus idempotence ``(x°)° = x°``."""
    x = as_seq(x)
    xo, decomp = level_sequence(x, phi)
    report = verify_level_properties(x, xo, decomp, phi, tol)
    xoo, d2 = level_sequence(xo, phi)
    dev = float(np.max(np.abs(xoo.values - xo.values) / np.maximum(xo.values, 1e-300))) if x.N else 0.0
    ok = dev <= tol and len(d2) == 0
    report.n_cases += 1
    report.n_pass += ok
    report.details["idempotent"] = {"passed": bool(ok), "margin": tol - dev}
    report.worst_margin = min(report.worst_margin, tol - dev)
    if not ok and len(report.witnesses) < 3:
        report.witnesses.append({"condition": "idempotent", **_witness(x)})
    report.params = {"alpha": phi.alpha} if phi.kind == "power" else {"phi": "explicit"}
    report.params["tol"] = tol
    return report


# ------------------------------------------------------------------- suite

def _default_hardy_inc():
    return tuple((p, f * (p - 1.0)) for p in (1.5, 2.0, 3.0, 4.0, 6.0) for f in (0.0, 0.25, 0.5, 0.75))


def _default_hardy_dec():
    return tuple((p, a) for p in (1.5, 2.0, 3.0, 4.0, 6.0) for a in (-0.2, -0.4, -0.6, -0.8))


def _default_exponents():
    vals = (1.25, 1.5, 2.0, 3.0, 5.0)
    return tuple((p, s) for p in vals for s in vals)


@dataclass
class SuiteConfig:
    """Grid and budget of :func:`run_full_suite`."""

    cases_per_point: int = 1000
    max_support: int = 200
    hardy_increasing: tuple = field(default_factory=_default_hardy_inc)
    hardy_decreasing: tuple = field(default_factory=_default_hardy_dec)
    exponents: tuple = field(default_factory=_default_exponents)
    pooling: tuple = ((2.0, 0.5), (1.5, 0.25), (3.0, 1.0), (4.0, 0.0))
    pooling_support: int = 50
    holder_pairs: int = 500
    level_cases: int = 200
    level_alphas: tuple = (0.25, 0.5, 0.75)
    pointwise: dict = field(default_factory=default_pointwise_grid)
    extremal_K: tuple = (1, 2, 16, 1000)
    sweep_K: tuple = (1, 100, 10000, 100000)
    only: tuple = ()
    tol: float = DEFAULT_TOL

    def as_dict(self) -> dict:
        out = {}
        for k, v in self.__dict__.items():
            out[k] = v if not isinstance(v, tuple) else [list(t) if isinstance(t, tuple) else t for t in v]
        return out


def random_cases(seed: int, stream: int, count: int, max_support: int, min_support: int = 2) -> list[Seq]:
    """Deterministic nonincreasing test sequences; ``stream`` separates checks."""
    rng = np.random.default_rng([int(seed), int(stream)])
    sizes = rng.integers(min_support, max_support + 1, size=count)
    seeds = rng.integers(0, 2 ** 62, size=count)
    return [random_decreasing(int(n), int(s), DISTRIBUTIONS[i % len(DISTRIBUTIONS)])
            for i, (n, s) in enumerate(zip(sizes, seeds))]


class _Collector:
    def __init__(self):
        self.reports: dict[tuple, CheckReport] = {}

    def add(self, r: CheckReport):
        key = (r.check_id, tuple(sorted(r.params.items())))
        if key in self.reports:
            cur = self.reports[key]
            cur.merge(r)
            if "max_ratio" in r.details:
                cur.details["max_ratio"] = max(cur.details.get("max_ratio", -math.inf), r.details["max_ratio"])
        else:
            self.reports[key] = r

    def error(self, check_id: str, params: dict, exc: Exception):
        r = CheckReport(check_id, params, error=f"{type(exc).__name__}: {exc}")
        self.add(r)

    def ordered(self) -> list[CheckReport]:
        rank = {cid: i for i, cid in enumerate(CHECK_ORDER)}
        return sorted(self.reports.values(), key=lambda r: rank.get(r.check_id, len(rank)))


def _wanted(cfg: SuiteConfig, group: str) -> bool:
    return not cfg.only or group in cfg.only


def run_full_suite(seed: int = 0, config: SuiteConfig | None = None) -> list[CheckReport]:
    """Run every check over the configured grids; deterministic in ``seed``.

    Precondition errors at a grid point become error reports for that
    point and the run continues.
    """
    cfg = SuiteConfig() if config is None else config
    for g in cfg.only:
        if g not in SUITE_GROUPS:
            raise ValueError(f"unknown check group {g!r}; expected one of {SUITE_GROUPS}")
    out = _Collector()
    extremal = [indicator(K) for K in cfg.extremal_K]

    if _wanted(cfg, "pointwise"):
        try:
            out.add(check_pointwise_lemmas(cfg.pointwise, cfg.tol))
        except ValueError as exc:
            out.error("pointwise_lemmas", {}, exc)

    if _wanted(cfg, "pooling"):
        cases = random_cases(seed, 1, cfg.cases_per_point, cfg.pooling_support)
        for p, a in cfg.pooling:
            try:
                for x in cases:
                    out.add(check_pooling_lemma(x, p, a))
            except ValueError as exc:
                out.error("pooling_inequality", {"p": p, "a": a}, exc)

    if _wanted(cfg, "hardy"):
        cases = extremal + random_cases(seed, 2, cfg.cases_per_point, cfg.max_support, 1)
        for regime, grid, cid in (("increasing_weight", cfg.hardy_increasing, "reversed_hardy_increasing"),
                                  ("decreasing_weight", cfg.hardy_decreasing, "reversed_hardy_decreasing")):
            for p, a in grid:
                try:
                    for x in cases:
                        out.add(check_reversed_hardy(x, p, a, regime))
                except ValueError as exc:
                    out.error(cid, {"p": p, "a": a}, exc)

    exps = []
    for p, s in cfg.exponents:
        try:
            exps.append(Exponents(p, s))
        except ValueError as exc:
            out.error("exponents", {"p": p, "s": s}, exc)

    if _wanted(cfg, "equivalence"):
        cases = extremal + random_cases(seed, 3, cfg.cases_per_point, cfg.max_support, 1)
        for e in exps:
            for x in cases:
                for r in check_norm_equivalences(x, e):
                    out.add(r)

    if _wanted(cfg, "dual"):
        cases = extremal + random_cases(seed, 4, cfg.cases_per_point, cfg.max_support, 1)
        for e in exps:
            for x in cases:
                for r in check_dual_bounds(x, e):
                    out.add(r)

    if _wanted(cfg, "holder"):
        xs = random_cases(seed, 5, cfg.holder_pairs, cfg.max_support, 1)
        ys = random_cases(seed, 6, cfg.holder_pairs, cfg.max_support, 1)
        pairs = [(u, u) for u in extremal] + list(zip(xs, ys))
        for e in exps:
            for x, y in pairs:
                for r in check_holder(x, y, e):
                    out.add(r)

    if _wanted(cfg, "level"):
        cases = random_cases(seed, 7, cfg.level_cases, cfg.max_support, 1)
        rng = np.random.default_rng([int(seed), 8])
        for alpha in cfg.level_alphas:
            try:
                phi = WeightSeq.power(alpha)
            except ValueError as exc:
                out.error("level_properties", {"alpha": alpha}, exc)
                continue
            for i, x in enumerate(cases):
                # half the cases are shuffled: the construction does not need monotone input
                v = x.values if i % 2 == 0 else rng.permutation(x.values)
                out.add(check_level_sequence(v, phi))

    if _wanted(cfg, "sharpness"):
        for r in _sharpness_reports(cfg, exps):
            out.add(r)
    return out.ordered()


def _sharpness_reports(cfg: SuiteConfig, exps: list[Exponents]) -> list[CheckReport]:
    """Sweep data: how close each ratio gets to its constant along ``u^K`` (not asserted)."""
    reports = []
    jobs = [("hardy_inc", (p, a)) for p, a in cfg.hardy_increasing]
    jobs += [("S_ratio", (p, a)) for p, a in cfg.hardy_decreasing]
    jobs += [("B_ratio", e) for e in exps if e.p <= e.s]
    jobs += [("holder_ratio", e) for e in exps]
    for target, params in jobs:
        pd = params.as_dict() if isinstance(params, Exponents) else {"p": params[0], "a": params[1]}
        r = CheckReport("sharpness", {"target": target, **pd}, asserted=False)
        try:
            rows = sharpness_sweep(target, params, cfg.sweep_K, cfg.tol)
        except ValueError as exc:
            r.error = f"{type(exc).__name__}: {exc}"
            reports.append(r)
            continue
        r.n_cases = r.n_pass = len(rows)
        r.worst_margin = min(row.gap for row in rows)
        r.details = {"K": [row.K for row in rows], "ratio": [row.ratio for row in rows],
                     "target": rows[0].target, "gap": [row.gap for row in rows]}
        reports.append(r)
    return reports


def suite_passed(reports: list[CheckReport]) -> bool:
    """True iff every asserted report passed and no report carries an error."""
    return all((r.passed or not r.asserted) and r.error is None for r in reports)
