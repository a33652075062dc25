"""Level sequences with respect to a positive weight.

The level sequence ``x°`` of ``x`` with respect to ``phi`` is read off the
least concave majorant of the points ``(Phi_n, X_n)``: on the hull segment
covering ``(Phi_{n-1}, Phi_n]`` with slope ``lambda``, ``x°_n = lambda * phi_n``.
The hull is built in one monotone-chain pass. Each stack entry is a hull
segment that stores its own mass and weight, so slopes are never formed
from differences of large prefix sums. This is the same computation as
pool-adjacent-violators on ``x/phi`` with weights ``phi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .report import CheckReport
from .seq import Seq, as_seq, compensated_cumsum

#: relative tolerance for deciding x°_n != x_n
IDENTITY_RTOL = 1e-9


@dataclass(frozen=True)
class WeightSeq:
    """A positive weight ``phi``: ``power`` (``phi_n = n^-alpha``) or ``explicit``."""

    kind: str
    alpha: float = 0.0
    values: tuple[float, ...] = ()

    def __post_init__(self):
        if self.kind == "power":
            if not self.alpha < 1.0:
                raise ValueError("power weight needs alpha < 1 so that Phi_n diverges")
        elif self.kind == "explicit":
            vals = tuple(float(v) for v in self.values)
            if not all(v > 0 and math.isfinite(v) for v in vals):
                raise ValueError("weights must be positive and finite")
            object.__setattr__(self, "values", vals)
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")

    @classmethod
    def power(cls, alpha: float) -> "WeightSeq":
        return cls("power", alpha=float(alpha))

    @classmethod
    def explicit(cls, values) -> "WeightSeq":
        return cls("explicit", values=tuple(values))

    def phi(self, N: int) -> np.ndarray:
        """``phi_1, ..., phi_N``."""
        if self.kind == "power":
            return np.power(np.arange(1, N + 1, dtype=np.float64), -self.alpha)
        if N > len(self.values):
            raise ValueError(f"explicit weight has {len(self.values)} entries, {N} needed")
        return np.array(self.values[:N], dtype=np.float64)

    def Phi(self, N: int) -> np.ndarray:
        return compensated_cumsum(self.phi(N))


@dataclass(frozen=True)
class Segment:
    """Pooled index block ``M..N`` (1-based, inclusive) on which ``x°/phi = lam``."""

    M: int
    N: int
    lam: float

    def __post_init__(self):
        if not 1 <= self.M <= self.N:
            raise ValueError(f"bad segment {self.M}..{self.N}")


@dataclass(frozen=True)
class LevelDecomposition:
    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __len__(self) -> int:
        return len(self.segments)

    def __iter__(self):
        return iter(self.segments)

    def covered(self, N: int) -> np.ndarray:
        mask = np.zeros(N, dtype=bool)
        for seg in self.segments:
            mask[seg.M - 1:seg.N] = True
        return mask


def _differs(a: np.ndarray, b: np.ndarray, rtol: float) -> np.ndarray:
    return np.abs(a - b) > rtol * np.maximum(np.abs(a), np.abs(b))


def _hull_blocks(x: list[float], phi: list[float]) -> list[int]:
    """Start indices (0-based) of the maximal blocks of the concave majorant."""
    starts: list[int] = []
    mass: list[float] = []
    weight: list[float] = []
    for n, (m, w) in enumerate(zip(x, phi)):
        st = n
        # pop while the new segment is at least as steep as the previous one
        while mass and m * weight[-1] >= mass[-1] * w:
            m += mass.pop()
            w += weight.pop()
            st = starts.pop()
        starts.append(st)
        mass.append(m)
        weight.append(w)
    return starts


def level_sequence(x, phi: WeightSeq) -> tuple[Seq, LevelDecomposition]:
    """The level sequence ``x°`` of ``x`` with respect to ``phi`` and its pooled blocks.

    ``x°/phi`` is nonincreasing, the partial sums of ``x°`` dominate those of
    ``x`` with equal total, and ``x°`` differs from ``x`` only on the
    returned segments, each preserving its sum. Blocks where ``x/phi`` is
    already constant to within ``IDENTITY_RTOL`` are pooled but not reported.
    """
    x = as_seq(x)
    N = x.N
    if N == 0:
        return x, LevelDecomposition()
    v = x.values
    ph = phi.phi(N)
    starts = _hull_blocks(v.tolist(), ph.tolist())
    bounds = starts + [N]
    out = v.copy()
    segments = []
    for st, en in zip(bounds[:-1], bounds[1:]):
        if en - st < 2:
            continue
        lam = math.fsum(v[st:en]) / math.fsum(ph[st:en])
        pooled = lam * ph[st:en]
        # always pool: a block left as is may still rise by ~2 rtol in x/phi
        changed = np.any(_differs(pooled, v[st:en], IDENTITY_RTOL))
        out[st:en] = pooled
        if changed:
            segments.append(Segment(st + 1, en, lam))
    return Seq(out), LevelDecomposition(tuple(segments))


def verify_level_properties(x, xo, decomp: LevelDecomposition, phi: WeightSeq,
                            tol: float = IDENTITY_RTOL) -> CheckReport:
    """Check the three characterizing conditions of a level sequence.

    ``a``: ``xo/phi`` nonincreasing. ``b``: partial sums of ``xo`` dominate
    those of ``x`` and the totals agree. ``c``: ``xo == x`` off the segments,
    and on each segment the sums agree with ``xo/phi == lam``. All comparisons
    are relative to ``tol``. Margins are reported so that negative means
    violated.
    """
    x, xo = as_seq(x), as_seq(xo)
    report = CheckReport("level_properties", {"N": x.N, "tol": tol})
    if xo.N != x.N:
        report.error = f"length mismatch: x has {x.N} entries, xo has {xo.N}"
        return report
    N = x.N
    v, vo = x.values, xo.values
    ph = phi.phi(N)
    scale = max(float(np.max(v)) if N else 0.0, 1e-300)

    margins: dict[str, float] = {}
    # (a)
    r = vo / ph
    if N > 1:
        rise = (r[1:] - r[:-1]) / np.maximum(r[:-1], r[1:]).clip(min=1e-300)
        margins["a"] = float(tol - rise.max())
    else:
        margins["a"] = tol
    # (b)
    X, XO = compensated_cumsum(v), compensated_cumsum(vo)
    total = float(X[-1]) if N else 0.0
    denom = max(total, 1e-300)
    if N:
        dom = float(((XO - X) / denom).min())
        margins["b"] = min(dom + tol, tol - abs(float(XO[-1]) - total) / denom)
    else:
        margins["b"] = tol
    # (c)
    c_margin = tol
    last_end, last_lam = 0, math.inf
    for seg in decomp:
        if seg.M <= last_end or seg.N > N or not seg.lam < last_lam:
            c_margin = min(c_margin, -1.0)
            continue
        last_end, last_lam = seg.N, seg.lam
        sl = slice(seg.M - 1, seg.N)
        s_x, s_o = math.fsum(v[sl]), math.fsum(vo[sl])
        c_margin = min(c_margin, tol - abs(s_o - s_x) / max(s_x, 1e-300))
        dev = np.abs(r[sl] - seg.lam).max() / max(seg.lam, 1e-300)
        c_margin = min(c_margin, tol - float(dev))
    outside = ~decomp.covered(N)
    if np.any(outside):
        floor = max(scale * 1e-300, np.finfo(float).tiny)
        off = np.abs(vo[outside] - v[outside]) / np.maximum(np.maximum(v[outside], vo[outside]), floor)
        c_margin = min(c_margin, tol - float(off.max()))
    margins["c"] = c_margin

    for cond in ("a", "b", "c"):
        ok = margins[cond] >= 0.0
        report.n_cases += 1
        report.n_pass += ok
        report.details[cond] = {"passed": bool(ok), "margin": margins[cond]}
        if not ok and len(report.witnesses) < 3:
            report.witnesses.append({"condition": cond, "x": v[:12].tolist(), "xo": vo[:12].tolist()})
    report.worst_margin = min(margins.values())
    return report
