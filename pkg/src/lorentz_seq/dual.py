"""The dual Lorentz norm and a brute-force maximization oracle for it."""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize

from .level import WeightSeq, level_sequence
from .norms import Exponents, lorentz_norm
from .seq import Seq, as_seq, decreasing_rearrangement


class OracleNotConverged(RuntimeError):
    """Raised when no restart certifies the requested accuracy; carries the best value."""

    def __init__(self, message: str, best: float, y: np.ndarray, gap: float):
        super().__init__(message)
        self.best = best
        self.y = y
        self.gap = gap


def dual_norm(x, e: Exponents) -> float:
    """``||x||'_{p,s}``, the norm dual to ``||.||_{p',s'}``.

    For ``s <= p`` this is the standard norm ``||x||_{p,s}``. For ``p < s``
    it is ``||x°||_{p,s}`` where ``x°`` is the level sequence of ``x*``
    with respect to ``n^-alpha``, ``alpha = 1 - s'/p'``.
    """
    xs = decreasing_rearrangement(x)
    if e.s <= e.p:
        return lorentz_norm(xs, e)
    xo, _ = level_sequence(xs, WeightSeq.power(e.alpha))
    return lorentz_norm(xo, e)


def dual_level_sequence(x, e: Exponents) -> Seq:
    if not e.p < e.s:
        raise ValueError("the level-sequence representation needs p < s")
    return level_sequence(decreasing_rearrangement(x), WeightSeq.power(e.alpha))[0]


def _project_simplex(V: np.ndarray) -> np.ndarray:
    """Row-wise Euclidean projection onto the probability simplex."""
    R, n = V.shape
    U = -np.sort(-V, axis=1)
    css = np.cumsum(U, axis=1) - 1.0
    idx = np.arange(1, n + 1)
    cond = U - css / idx > 0
    rho = n - 1 - np.argmax(cond[:, ::-1], axis=1)
    theta = css[np.arange(R), rho] / (rho + 1)
    return np.maximum(V - theta[:, None], 0.0)


def dual_norm_oracle(x, e: Exponents, restarts: int = 32, tol: float = 1e-5,
                     iterations: int = 200, seed: int = 0) -> float:
    """Maximize ``sum x_n y_n / ||y||_{p',s'}`` over nonincreasing ``y >= 0``.

    ``y`` is parametrized by nonnegative decrements ``d_j = y_j - y_{j+1}``;
    with ``e_j = d_j X_j`` the pairing ``sum x_n y_n`` becomes ``sum e_j``, so
    fixing it to 1 puts ``e`` on the probability simplex. There the task is
    to minimize the convex ``||y||^{s'}``, done by projected gradient with
    step halving on non-improvement, from ``restarts`` seeded Dirichlet
    starts advanced together.

    Convergence is read off the Frank-Wolfe gap, which bounds the
    suboptimality. The answer is a lower bound (a feasible ``y``), and it is
    accepted once the certified relative gap is below ``tol``.

    Raises
    ------
    OracleNotConverged
        if the budget ends before the gap certificate reaches ``tol``.
    """
    xs = as_seq(x).values
    if xs.size and np.any(np.diff(xs) > 0):
        raise ValueError("the oracle expects a nonincreasing sequence")
    N = int(np.count_nonzero(xs))
    if N == 0:
        return 0.0
    xs = xs[:N]
    X = np.cumsum(xs)
    conj = e.conjugate()
    sp = conj.s
    w = np.power(np.arange(1, N + 1, dtype=np.float64), conj.s / conj.p - 1.0)

    def values(E):
        Y = np.cumsum((E / X)[:, ::-1], axis=1)[:, ::-1]
        return Y, (w * Y ** sp).sum(axis=1)

    def gradient(Y):
        gy = sp * w * Y ** (sp - 1.0)
        return np.cumsum(gy, axis=1) / X

    rng = np.random.default_rng(seed)
    E = rng.dirichlet(np.ones(N), size=restarts)
    Y, h = values(E)
    G = gradient(Y)
    step = 1.0 / (np.abs(G).max(axis=1) + 1e-300)
    gap = (G * E).sum(axis=1) - G.min(axis=1)
    for _ in range(iterations):
        cand = _project_simplex(E - step[:, None] * G)
        Yc, hc = values(cand)
        better = hc < h
        E[better], Y[better], h[better] = cand[better], Yc[better], hc[better]
        if np.any(better):
            G[better] = gradient(Y[better])
        step = np.where(better, step * 1.5, step * 0.5)
        gap = (G * E).sum(axis=1) - G.min(axis=1)
        rel = gap / (sp * h)
        if rel.min() <= tol:
            break
    best = int(np.argmin(h))
    cert = float(gap.min() / (sp * h[best]))
    if cert > tol:
        e_pol, h_pol, g_pol = _polish(E[best], values, gradient)
        gap_pol = float(g_pol @ e_pol - g_pol.min())
        if h_pol <= h[best]:
            E[best], h[best] = e_pol, h_pol
            Y[best] = values(e_pol[None, :])[0][0]
            cert = min(cert, gap_pol / (sp * h_pol))
    y = Y[best]
    ratio = float(np.dot(xs, y) / lorentz_norm(y, conj))
    if not cert <= tol:
        raise OracleNotConverged(
            f"dual-norm oracle gap {cert:.3g} above tol {tol:.3g} after {iterations} iterations",
            ratio, y, cert,
        )
    return ratio


def _polish(e0: np.ndarray, values, gradient):
    """SLSQP refinement on the simplex; returns the point, objective and gradient."""
    scale = values(e0[None, :])[1][0]

    def fun(e):
        return values(e[None, :])[1][0] / scale

    def jac(e):
        return gradient(values(e[None, :])[0])[0] / scale

    res = minimize(
        fun, e0, jac=jac, method="SLSQP", bounds=[(0.0, 1.0)] * e0.size,
        constraints=[{"type": "eq", "fun": lambda e: e.sum() - 1.0, "jac": lambda e: np.ones_like(e)}],
        options={"ftol": 1e-15, "maxiter": 500},
    )
    e = np.clip(res.x, 0.0, None)
    e /= e.sum()
    Y, h = values(e[None, :])
    return e, float(h[0]), gradient(Y)[0]
