"""Best polynomial approximation by the Remez exchange algorithm."""

from __future__ import annotations

from dataclasses import dataclass

import mpmath
import numpy as np

from ._alternation import alternating_extrema, reduce_alternant, sign_run_maxima
from .certificate import EquioscillationCertificate
from .chebyshev import ChebSeries, Interval, cheb_points
from .precision import eps, get_precision_bits
from .special import erfc


class RemezConvergenceError(RuntimeError):
    """The exchange iteration did not level the error within ``max_iter`` steps.

    ``best`` holds the iterate with the smallest defect and ``defect`` its
    relative levelling defect.
    """

    def __init__(self, message, best=None, defect=None):
        super().__init__(message)
        self.best = best
        self.defect = defect


@dataclass(frozen=True)
class PolyMinimaxResult:
    approximant: ChebSeries
    error: float
    certificate: EquioscillationCertificate
    iterations: int
    converged: bool = True

    def __call__(self, x):
        return self.approximant(x)


def _chebvander(t, k: int):
    t = np.asarray(t)
    V = np.empty((len(t), k + 1), dtype=t.dtype)
    V[:, 0] = 1
    if k >= 1:
        V[:, 1] = t
    for j in range(2, k + 1):
        V[:, j] = 2 * t * V[:, j - 1] - V[:, j - 2]
    return V


def _solve(A, b):
    if A.dtype == object:
        with mpmath.workprec(get_precision_bits()):
            sol = mpmath.lu_solve(mpmath.matrix(A.tolist()), mpmath.matrix(b.tolist()))
        return np.array([sol[i] for i in range(len(b))], dtype=object)
    return np.linalg.solve(A, b)


class _Samples:
    """Target restricted to a finite, sorted point set."""

    def __init__(self, points, values):
        self.points = np.asarray(points)
        self.values = np.asarray(values)
        order = np.argsort(self.points.astype(float), kind="stable")
        self.points = self.points[order]
        self.values = self.values[order]
        if np.any(np.diff(self.points.astype(float)) <= 0):
            raise ValueError("sample points must be distinct")

    def __call__(self, x):
        idx = np.searchsorted(self.points.astype(float), np.asarray(x, dtype=float))
        return self.values[idx]


def newman_rivlin(k: int, n: float):
    """Newman-Rivlin estimate (1/2) erfc(k / sqrt(n)) of the degree-k error for x^n."""
    if k < 0 or n <= 0:
        raise ValueError("need k >= 0 and n > 0")
    if isinstance(n, mpmath.mpf) or get_precision_bits() > 53:
        with mpmath.workprec(get_precision_bits()):
            return erfc(mpmath.mpf(k) / mpmath.sqrt(n)) / 2
    return erfc(k / np.sqrt(n)) / 2


def remez_poly(f, k: int, domain=(0.0, 1.0), *, tol: float = 1e-12, max_iter: int = 100,
               points=None, per_interval: int = 16) -> PolyMinimaxResult:
    """Best approximation of ``f`` by polynomials of degree ``<= k``.

    Parameters
    ----------
    f : callable or array_like
        Vectorized target.  With ``points`` given it may instead be the array
        of target values at those points.
    k : int
        Polynomial degree.
    domain : Interval or (lo, hi)
        Approximation interval.
    tol : float
        Relative levelling tolerance for convergence.  Errors whose spread is
        below the rounding floor of ``f`` are also accepted.
    max_iter : int
        Exchange steps before giving up.
    points : array_like, optional
        Restrict the problem to this finite point set (discrete minimax).

    Returns
    -------
    PolyMinimaxResult

    Raises
    ------
    RemezConvergenceError
        If the error is not levelled after ``max_iter`` exchanges.
    """
    if k < 0:
        raise ValueError("degree must be nonnegative")
    domain = Interval.coerce(domain)
    discrete = points is not None
    if discrete:
        if not callable(f):
            f = _Samples(points, f)
        grid = np.sort(np.asarray(points))
        if len(grid) < k + 2:
            raise ValueError(f"need at least {k + 2} points for degree {k}")
        if not domain.contains(grid):
            raise ValueError("points must lie in the domain")
        fgrid = np.asarray(f(grid))
        ref = grid[np.unique(np.round(np.linspace(0, len(grid) - 1, k + 2)).astype(int))]
    else:
        ref = cheb_points(k + 1, domain)
        grid = cheb_points(max(8 * (k + 2), 64), domain)
        fgrid = np.asarray(f(grid))
    fscale = float(np.max(np.abs(fgrid.astype(float)))) or 1.0
    noise = 64 * eps() * fscale

    best = None
    for it in range(1, max_iter + 1):
        t = domain.to_unit(ref)
        A = np.concatenate([_chebvander(t, k), np.array([(-1) ** i for i in range(k + 2)],
                                                        dtype=t.dtype)[:, None]], axis=1)
        sol = _solve(A, np.asarray(f(ref), dtype=A.dtype))
        p = ChebSeries(sol[:-1], domain)
        h = sol[-1]

        def err(x, p=p):
            return f(x) - p(x)

        if discrete:
            e_all = err(grid)
            idx = sign_run_maxima(e_all)
            xs, es = grid[idx], e_all[idx]
        else:
            xs, es = alternating_extrema(err, domain.lo, domain.hi, breakpoints=ref,
                                         base_grid=grid, per_interval=per_interval)
        mags = np.abs(es.astype(float))
        max_err = float(mags.max()) if len(mags) else 0.0

        if max_err <= noise:
            cert = EquioscillationCertificate.from_errors(
                ref, np.zeros(len(ref)), 0.0, degenerate=True)
            return PolyMinimaxResult(p, max_err, cert, it)
        if len(xs) < k + 2:
            raise RemezConvergenceError(
                f"only {len(xs)} alternating extrema for degree {k}", best=best)

        xs, es = reduce_alternant(xs, es, k + 2)
        spread = max_err - float(np.min(np.abs(es.astype(float))))
        cert = EquioscillationCertificate.from_errors(xs, es, h)
        result = PolyMinimaxResult(p, max_err, cert, it)
        defect = spread / max_err
        if best is None or defect < best[1]:
            best = (result, defect)
        if defect <= tol or spread <= noise:
            return result
        ref = xs

    raise RemezConvergenceError(
        f"Remez did not converge in {max_iter} iterations (defect {best[1]:.3g})",
        best=best[0], defect=best[1])
