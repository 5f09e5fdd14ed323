"""Discrete rational minimax by the differential-correction algorithm.

Used as an oracle for :func:`halphen.rational_remez.rational_remez`.  It
shares no code with that solver beyond the Chebyshev basis evaluation: each
step is a linear program solved by HiGHS.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog


class DifferentialCorrectionError(RuntimeError):
    """The linear program of a correction step had no solution."""


@dataclass
class DCInfo:
    deltas: list = field(default_factory=list)
    objectives: list = field(default_factory=list)
    numerator: np.ndarray | None = None
    denominator: np.ndarray | None = None
    iterations: int = 0


def _basis(u, k):
    V = np.empty((len(u), k + 1))
    V[:, 0] = 1
    if k >= 1:
        V[:, 1] = u
    for j in range(2, k + 1):
        V[:, j] = 2 * u * V[:, j - 1] - V[:, j - 2]
    return V


def differential_correction(f, k: int, grid, *, chart=None, max_iter: int = 100,
                            tol: float = 1e-14, full_output: bool = False):
    """Discrete type-(k, k) minimax error of ``f`` on ``grid``.

    Numerator and denominator are expanded in Chebyshev polynomials of a
    chart variable ``u = chart(x)`` in [-1, 1] (default: the affine map of the
    grid's hull).  Any Mobius ``chart`` leaves the set of type-(k, k) rationals
    unchanged, so it only affects conditioning.  Each step solves

        min z  s.t.  |f_i q_i - p_i| - delta q_i <= z q_old_i,  0 <= q_i <= 1

    and the iteration stops when ``z`` is no longer negative or the error
    ``delta`` stops decreasing.

    Returns the discrete minimax error, or ``(error, DCInfo)`` with
    ``full_output=True``.  An error at rounding level already for the
    initial least-squares polynomial is reported as exactly zero.

    Raises
    ------
    DifferentialCorrectionError
        If a correction LP is infeasible or fails.
    """
    x = np.sort(np.asarray(grid, dtype=float).ravel())
    if len(x) < 4 * k + 4:
        raise ValueError(f"need at least {4 * k + 4} grid points for type ({k},{k})")
    F = np.asarray(f(x), dtype=float) if callable(f) else np.asarray(f, dtype=float)
    if not np.all(np.isfinite(F)):
        raise ValueError("f is not bounded on the grid")
    if chart is None:
        u = (2 * x - (x[0] + x[-1])) / (x[-1] - x[0])
    else:
        u = np.asarray(chart(x), dtype=float)
    if np.any(np.abs(u) > 1 + 1e-12):
        raise ValueError("chart must map the grid into [-1, 1]")
    V = _basis(np.clip(u, -1, 1), k)
    m = k + 1
    info = DCInfo()

    a = np.linalg.lstsq(V, F, rcond=None)[0]
    b = np.zeros(m)
    b[0] = 1.0
    P, Q = V @ a, V @ b
    delta = float(np.max(np.abs(F - P / Q)))
    info.numerator, info.denominator = a, b
    if delta <= 16 * np.finfo(float).eps * (float(np.max(np.abs(F))) or 1.0):
        # f is reproduced by a polynomial up to rounding
        info.deltas.append(0.0)
        return (0.0, info) if full_output else 0.0
    info.deltas.append(delta)

    zeros = np.zeros((len(x), m))
    cost = np.zeros(2 * m + 1)
    cost[-1] = 1.0
    bounds = [(None, None)] * (2 * m) + [(None, None)]
    for it in range(1, max_iter + 1):
        q_old = Q / np.max(Q)
        A_ub = np.vstack([
            np.hstack([-V, (F - delta)[:, None] * V, -q_old[:, None]]),
            np.hstack([V, (-F - delta)[:, None] * V, -q_old[:, None]]),
            np.hstack([zeros, V, np.zeros((len(x), 1))]),
            np.hstack([zeros, -V, np.zeros((len(x), 1))]),
        ])
        b_ub = np.concatenate([np.zeros(2 * len(x)), np.ones(len(x)), np.zeros(len(x))])
        res = linprog(cost, A_ub=A_ub, b_ub=b_ub, bounds=bounds, method="highs-ds",
                      options={"primal_feasibility_tolerance": 1e-10,
                               "dual_feasibility_tolerance": 1e-10})
        if res.status != 0:
            raise DifferentialCorrectionError(f"correction LP failed: {res.message}")
        info.iterations = it
        z = float(res.x[-1])
        info.objectives.append(z)
        a_new, b_new = res.x[:m], res.x[m:2 * m]
        P_new, Q_new = V @ a_new, V @ b_new
        if z >= -tol or np.any(Q_new <= 0):
            break
        new_delta = float(np.max(np.abs(F - P_new / Q_new)))
        if not new_delta < delta:
            break
        decrease = delta - new_delta
        delta, Q = new_delta, Q_new
        info.deltas.append(delta)
        info.numerator, info.denominator = a_new, b_new
        if decrease <= tol * delta:
            break
    return (delta, info) if full_output else delta
