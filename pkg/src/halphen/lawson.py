"""Lawson (iteratively reweighted least-squares) refinement of barycentric fits."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .barycentric import BarycentricRational


@dataclass
class LawsonInfo:
    errors: list = field(default_factory=list)   # sup error of each iterate
    merit: list = field(default_factory=list)    # best sup error so far
    status: str = "converged"
    iterations: int = 0


def _sup_error(r, Z, F):
    return float(np.max(np.abs(F - r(Z))))


def lawson_refine(r: BarycentricRational, f, grid, iters: int = 200, *,
                  exponent: float = 1.0, full_output: bool = False, rtol: float = 1e-12):
    """Push a barycentric approximant toward the discrete minimax fit on ``grid``.

    The support nodes of ``r`` stay fixed.  Each step solves the weighted
    linearized problem ``min sum_i W_i |N(x_i) - f(x_i) D(x_i)|^2`` over the
    numerator and denominator weights, then multiplies ``W`` by
    ``|error|**exponent``.  The best pole-free iterate (by sup error on
    ``grid``) is returned, so the result is never worse than ``r``.

    With ``full_output=True`` returns ``(r, LawsonInfo)``; ``info.status`` is
    ``"stagnated"`` if the Lawson weights collapse onto a single point.
    """
    Z = np.asarray(grid, dtype=float).ravel()
    F = np.asarray(f(Z), dtype=float) if callable(f) else np.asarray(f, dtype=float)
    order = np.argsort(Z)
    Z, F = Z[order], F[order]
    r = r.astype_float()
    z = r.nodes
    lo, hi = Z.min(), Z.max()
    info = LawsonInfo()

    best, best_err = r, _sup_error(r, Z, F)
    info.merit.append(best_err)
    info.errors.append(best_err)
    if best_err == 0:
        info.status = "converged"
        return (best, info) if full_output else best

    on_node = np.isin(Z, z)
    Zm, Fm = Z[~on_node], F[~on_node]
    fz = F[np.searchsorted(Z, z)] if np.all(np.isin(z, Z)) else np.asarray(
        f(z) if callable(f) else np.interp(z, Z, F), dtype=float)
    C = 1 / (Zm[:, None] - z[None, :])
    A = np.hstack([C, -Fm[:, None] * C])
    W = np.full(len(Zm), 1 / len(Zm))
    for it in range(1, iters + 1):
        _, _, Vh = np.linalg.svd(np.sqrt(W)[:, None] * A, full_matrices=False)
        alpha, beta = np.split(Vh[-1], 2)
        info.iterations = it
        if np.any(beta == 0):
            info.status = "stagnated"
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            e = Fm - (C @ alpha) / (C @ beta)
        e_nodes = fz - alpha / beta
        err = float(max(np.max(np.abs(e)), np.max(np.abs(e_nodes))))
        info.errors.append(err)
        if np.isfinite(err) and err < best_err:
            cand = BarycentricRational(z, alpha / beta, beta, r.type_bound)
            if cand.is_pole_free(lo, hi):
                best, best_err = cand, err
        info.merit.append(best_err)
        if not np.all(np.isfinite(e)):
            info.status = "stagnated"
            break
        W = W * np.abs(e) ** exponent
        total = W.sum()
        if total == 0 or W.max() >= (1 - 1e-12) * total:
            info.status = "stagnated"
            break
        W /= total
        if len(info.merit) > 20 and info.merit[-20] - best_err <= rtol * best_err:
            break
    return (best, info) if full_output else best
