"""Best type-(k, k) rational approximation on an interval.

Pipeline: Chebyshev-clustered sampling, AAA initialization, Lawson refinement,
then a barycentric exchange iteration.  In each exchange step the support
nodes are every other reference point and the remaining points carry the
interpolation conditions; the levelled error ``h`` and the weights come from
the generalized eigenproblem ``L w = h (2 C) w`` with ``C`` the Cauchy matrix
between the two halves of the reference and ``L`` the matching Loewner
matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import mpmath
import numpy as np
import scipy.linalg

from ._alternation import alternating_extrema, reduce_alternant, sign_run_maxima
from .barycentric import AAAError, BarycentricRational, aaa_fit
from .certificate import DEFAULT_CERTIFICATE_TOL, EquioscillationCertificate
from .chebyshev import Interval, cheb_points
from .lawson import lawson_refine
from .poly_remez import _Samples
from .precision import eps, get_precision_bits, is_extended

log = logging.getLogger(__name__)


class RationalMinimaxError(RuntimeError):
    """Raised when no pole-free approximant can be produced."""


@dataclass(frozen=True)
class RationalMinimaxResult:
    approximant: BarycentricRational
    error: float
    certificate: EquioscillationCertificate
    defect: int
    status: str
    iterations: int = 0

    @property
    def converged(self) -> bool:
        return self.status == "converged"

    def __call__(self, x):
        return self.approximant(x)


@dataclass
class _Attempt:
    r: BarycentricRational
    xs: np.ndarray
    es: np.ndarray
    h: float
    max_err: float
    defect: float
    n_alt: int
    iterations: int
    exact: bool = False


def _loewner_step(f, ref, lo, hi):
    """Exchange step: best levelled rational through the reference ``ref``."""
    t, y = ref[0::2], ref[1::2]
    ft, fy = f(t), f(y)
    if np.asarray(ref).dtype == object:
        return _loewner_step_mp(t, y, ft, fy, lo, hi)
    Cm = 1 / (y[:, None] - t[None, :])
    L = (ft[None, :] - fy[:, None]) * Cm
    vals, vecs = scipy.linalg.eig(L, 2 * Cm)
    cands = []
    for h, w in zip(vals, vecs.T):
        if not np.isfinite(h) or abs(h.imag) > 1e-8 * max(1.0, abs(h.real)):
            continue
        w = w.real if np.max(np.abs(w.imag)) <= 1e-8 * np.max(np.abs(w)) else None
        if w is None:
            continue
        h = float(h.real)
        try:
            r = BarycentricRational(t, ft - h, w)
        except ValueError:
            continue
        if _alternating_weights(t, w) and not len(r.real_poles_in(lo, hi)):
            cands.append((abs(h), h, r))
    if not cands:
        return None, None
    cands.sort(key=lambda c: c[0])
    return cands[0][1], cands[0][2]


def _loewner_step_mp(t, y, ft, fy, lo, hi):
    with mpmath.workprec(get_precision_bits()):
        m = len(t)
        Cm = mpmath.matrix(m, m)
        L = mpmath.matrix(m, m)
        for i in range(m):
            for j in range(m):
                Cm[i, j] = 2 / (y[i] - t[j])
                L[i, j] = (ft[j] - fy[i]) / (y[i] - t[j])
        M = mpmath.inverse(Cm) * L
        vals, vecs = mpmath.eig(M)
        cands = []
        for idx, h in enumerate(vals):
            h = mpmath.mpc(h)
            if abs(h.imag) > mpmath.mpf(2) ** (-get_precision_bits() // 2) * max(1, abs(h.real)):
                continue
            w = np.array([mpmath.re(vecs[i, idx]) for i in range(m)], dtype=object)
            h = mpmath.re(h)
            try:
                r = BarycentricRational(t, np.array([v - h for v in ft], dtype=object), w)
            except ValueError:
                continue
            if _alternating_weights(t, w.astype(float)) and not len(
                    r.astype_float().real_poles_in(lo, hi)):
                cands.append((abs(h), h, r))
    if not cands:
        return None, None
    cands.sort(key=lambda c: c[0])
    return cands[0][1], cands[0][2]


def _alternating_weights(t, w) -> bool:
    """Denominator q(t_j) = w_j prod_{l!=j}(t_j - t_l) of one sign at ascending nodes."""
    w = np.asarray(w, dtype=float)
    s = np.sign(w) * (-1.0) ** (len(w) - 1 - np.arange(len(w)))
    return bool(np.all(s == s[0])) and s[0] != 0


def _extrema(f, r, lo, hi, ref, base_grid, discrete):
    def err(x):
        return f(x) - r(x)

    if discrete:
        e = err(base_grid)
        idx = sign_run_maxima(e)
        return base_grid[idx], e[idx]
    return alternating_extrema(err, lo, hi, breakpoints=ref, base_grid=base_grid)


def _exchange(f, k, ref, lo, hi, base_grid, discrete, max_iter, polish_tol, noise,
              r0=None):
    n_ref = 2 * k + 2
    best = None
    stall = 0
    for it in range(1, max_iter + 1):
        h, r = _loewner_step(f, ref, lo, hi)
        if r is None:
            log.debug("type (%d,%d): no pole-free eigenvector at iteration %d", k, k, it)
            break
        xs, es = _extrema(f, r, lo, hi, ref, base_grid, discrete)
        if len(xs) == 0:
            break
        max_err = max(abs(v) for v in es)
        n_alt = len(xs)
        if n_alt < n_ref:
            att = _Attempt(r, xs, es, h, max_err, np.inf, n_alt, it)
            best = best if best is not None and best.max_err <= max_err else att
            break
        xs, es = reduce_alternant(xs, es, n_ref)
        spread = max_err - min(abs(v) for v in es)
        defect = float(spread / max_err) if max_err > 0 else 0.0
        att = _Attempt(r, xs, es, h, max_err, defect, n_alt, it)
        if best is None or defect < best.defect:
            best, stall = att, 0
        else:
            stall += 1
        if defect <= polish_tol or spread <= noise or stall >= 4:
            break
        ref = xs
    return best


def _solve_type(f, k, lo, hi, grid, F, discrete, opts):
    noise = 64 * eps() * (float(np.max(np.abs(F))) or 1.0)
    try:
        r0 = aaa_fit(grid, F, k, tol=1e-15)
    except AAAError as exc:
        log.debug("AAA failed for type (%d,%d): %s", k, k, exc)
        return None
    e0 = float(np.max(np.abs(F - r0(grid))))
    if e0 <= noise:
        # target reproduced up to rounding
        xs = np.asarray([lo, hi])
        return _Attempt(r0, xs, f(xs) - r0(xs), 0.0, e0, 0.0, 2 * k + 2, 0, exact=True)
    r1 = lawson_refine(r0, F, grid, iters=opts["lawson_iters"])
    r1 = BarycentricRational(r1.nodes, r1.values, r1.weights, k)
    xs, es = _extrema(f, r1, lo, hi, r1.nodes, grid, discrete)
    if len(xs) >= 2 * k + 2:
        ref, _ = reduce_alternant(xs, es, 2 * k + 2)
    else:
        # too few alternations to seed the exchange; start from Chebyshev points
        pick = np.round(np.linspace(0, len(grid) - 1, 2 * k + 2)).astype(int)
        ref = grid[pick] if discrete else cheb_points(2 * k + 1, (lo, hi)).astype(float)
    att = _exchange(f, k, ref, lo, hi, grid, discrete, opts["max_iter"],
                    opts["polish_tol"], noise)
    if att is None:
        mags = np.abs(es.astype(float))
        return _Attempt(r1, xs, es, 0.0, float(mags.max()), np.inf, len(xs), 0)
    if is_extended() and not discrete:
        att = _polish_extended(f, k, att, lo, hi, opts)
    return att


def _polish_extended(f, k, att, lo, hi, opts):
    bits = get_precision_bits()
    with mpmath.workprec(bits):
        ref = np.array([mpmath.mpf(float(v)) for v in att.xs], dtype=object)
        lo_mp, hi_mp = mpmath.mpf(lo), mpmath.mpf(hi)
        noise = 64 * mpmath.mpf(2) ** (1 - bits)
        res = _exchange(f, k, ref, lo_mp, hi_mp, None, False, opts["max_iter"],
                        opts["polish_tol"] ** 2, noise)
    if res is None or res.max_err > att.max_err * (1 + 1e-6):
        return att
    return res


def rational_remez(f, k: int, domain=(0.0, 1.0), *, tol: float = DEFAULT_CERTIFICATE_TOL,
                   grid_size: int = 4096, lawson_iters: int = 300, max_iter: int = 40,
                   polish_tol: float = 1e-10, points=None) -> RationalMinimaxResult:
    """Best approximation of ``f`` on ``domain`` by rationals of type ``(k, k)``.

    Parameters
    ----------
    f : callable or array_like
        Vectorized target (array of values when ``points`` is given).
    k : int
        Numerator and denominator degree bound.
    domain : Interval or (lo, hi)
    tol : float
        Relative levelling defect at which the certificate is accepted and
        the result reported as ``"converged"``.
    grid_size : int
        Number of Chebyshev points used for AAA and Lawson.
    lawson_iters, max_iter : int
        Iteration caps for Lawson and for the exchange polish.
    polish_tol : float
        The exchange iteration keeps going until the defect is below this.
    points : array_like, optional
        Solve the discrete problem on these points instead.

    Returns
    -------
    RationalMinimaxResult
        ``defect`` is the number of degrees of freedom the optimum leaves
        unused: when the exchange at type (k, k) breaks down the solver
        retries at lower types and accepts type ``(k - d, k - d)`` once its
        error alternates on at least ``2k + 2 - d`` points.

    Raises
    ------
    RationalMinimaxError
        If no pole-free approximant is found at any type.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    domain = Interval.coerce(domain)
    lo, hi = float(domain.lo), float(domain.hi)
    discrete = points is not None
    if discrete:
        if not callable(f):
            f = _Samples(points, f)
        grid = np.sort(np.asarray(points, dtype=float))
        if not domain.contains(grid):
            raise ValueError("points must lie in the domain")
        if len(grid) < 2 * k + 2:
            raise ValueError(f"need at least {2 * k + 2} points")
    else:
        if grid_size < 2 * k + 2:
            raise ValueError("grid_size too small for the requested type")
        grid = cheb_points(grid_size - 1, (lo, hi)).astype(float)
    F = np.asarray(f(grid), dtype=float)
    if not np.all(np.isfinite(F)):
        raise ValueError("target is not finite on the sampling grid")
    opts = dict(lawson_iters=lawson_iters, max_iter=max_iter, polish_tol=polish_tol)

    fallback = None
    for j in range(k, -1, -1):
        att = _solve_type(f, j, lo, hi, grid, F, discrete, opts)
        if att is None:
            continue
        if att.exact:
            cert = EquioscillationCertificate.from_errors(att.xs, att.es, 0.0, degenerate=True)
            return RationalMinimaxResult(_retype(att.r, k), att.max_err, cert, k - j,
                                         "converged", att.iterations)
        if fallback is None or att.max_err < fallback[1].max_err:
            fallback = (j, att)
        if att.defect <= tol and (j == k or att.n_alt >= 2 * k + 2 - (k - j)):
            cert = EquioscillationCertificate.from_errors(att.xs, att.es, att.h)
            return RationalMinimaxResult(_retype(att.r, k), att.max_err, cert, k - j,
                                         "converged", att.iterations)
        log.debug("type (%d,%d) rejected: defect=%g, alternation=%d", j, j, att.defect,
                  att.n_alt)
    if fallback is None:
        raise RationalMinimaxError(f"no pole-free type ({k},{k}) approximant found")
    j, att = fallback
    if not att.r.is_pole_free(lo, hi):
        raise RationalMinimaxError("best iterate has a pole on the domain")
    cert = EquioscillationCertificate.from_errors(att.xs, att.es, att.h or att.max_err)
    return RationalMinimaxResult(_retype(att.r, k), att.max_err, cert, k - j, "stagnated",
                                 att.iterations)


def _retype(r: BarycentricRational, k: int) -> BarycentricRational:
    return BarycentricRational(r.nodes, r.values, r.weights, max(k, r.degree))
