"""Closed-form error models and the transplant between [0, 1] and (-inf, 0].

The Mobius map x = n/(n - s) carries [0, 1] onto (-inf, 0] and x**n onto
g_n(s) = (1 - s/n)**(-n), which approaches exp(s) from above as n grows.
Because rational type is preserved by Mobius maps, best type-(k, k) errors
for x**n on [0, 1] and for g_n on (-inf, 0] coincide, and both approach the
best errors for exp(s), which decay like 2 H**(k + 1/2).
"""

from __future__ import annotations

import contextlib
import math
from dataclasses import dataclass

import mpmath
import numpy as np

from ._alternation import sup_scan
from .chebyshev import cheb_points
from .precision import get_precision_bits, is_extended
from .rational_remez import RationalMinimaxResult, rational_remez
from .targets import ExpHalfLine, TransplantedPower, transplanted_power

#: 1/H to the digits used throughout.
HALPHEN_INVERSE = "9.2890254919208"
HALPHEN_H = 1 / float(HALPHEN_INVERSE)


def halphen_constant():
    """Halphen's constant at the working precision (from the stored digits)."""
    if is_extended():
        with mpmath.workprec(get_precision_bits()):
            return 1 / mpmath.mpf(HALPHEN_INVERSE)
    return HALPHEN_H


def halphen_model(k: int):
    """2 H^(k + 1/2), the predicted type-(k, k) minimax error."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    H = halphen_constant()
    if is_extended():
        with mpmath.workprec(get_precision_bits()):
            return 2 * H ** (mpmath.mpf(k) + mpmath.mpf(1) / 2)
    return 2 * H ** (k + 0.5)


@dataclass(frozen=True)
class MobiusMap:
    """x = n/(n - s) and its inverse s = n(x - 1)/x.

    Anchors: x = 0, 1, 1 + 1/(n-1) correspond to s = -inf, 0, 1.
    """

    n: float

    def __post_init__(self):
        if not self.n > 0:
            raise ValueError("n must be positive")

    def x_of_s(self, s):
        if np.ndim(s) == 0:
            if s == self.n:
                raise ValueError("s = n is the pole of the map")
            if s == -math.inf:
                return 0.0 * s if isinstance(s, mpmath.mpf) else 0.0
            return self.n / (self.n - s)
        s = np.asarray(s)
        if np.any(s == self.n):
            raise ValueError("s = n is the pole of the map")
        with np.errstate(divide="ignore"):
            return np.where(np.isinf(s), 0.0, self.n / (self.n - s))

    def s_of_x(self, x):
        """Inverse map; ``x = 0`` returns ``-inf`` rather than being computed."""
        if np.ndim(x) == 0:
            if x == 0:
                return -math.inf
            return self.n * (x - 1) / x
        x = np.asarray(x)
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(x == 0, -np.inf, self.n * (x - 1) / x)


def halfline_chart(n: float, c: float = 4.0):
    """Map x in [0, 1] to u in [-1, 1] with s(x) = -c(1-u)/(1+u).

    The composite is Mobius in x, so rationals of type (k, k) in x stay
    type (k, k) in u.
    """
    def chart(x):
        x = np.asarray(x, dtype=float)
        return (c * x + n * (x - 1)) / (c * x - n * (x - 1))
    return chart


def halfline_grid(n: float, size: int, c: float = 4.0) -> np.ndarray:
    """Points of [0, 1] whose chart images are ``size`` Chebyshev points."""
    u = cheb_points(size - 1).astype(float)
    with np.errstate(divide="ignore"):
        s = -c * (1 - u) / (1 + u)
        x = n / (n - s)
    x[0] = 0.0
    return x


class TransplantedTarget:
    """g_n(s) = (1 - s/n)^(-n) on (-inf, 0]."""

    def __init__(self, n):
        if not n > 0:
            raise ValueError("n must be positive")
        self.n = n

    def __call__(self, s):
        return transplanted_power(s, self.n)

    def on_chart(self, c: float = 4.0) -> TransplantedPower:
        """The same function seen through s = -c(1-y)/(1+y), y in [-1, 1]."""
        return TransplantedPower(self.n, c)


class TransplantedRational:
    """r(x(s)) for a barycentric ``r`` on [0, 1], rewritten in the variable s.

    A node z_j of ``r`` moves to s_j = n(z_j - 1)/z_j with weight
    w_j (n - s_j); a node at x = 0 becomes a node at infinity that contributes
    a constant term to numerator and denominator.
    """

    def __init__(self, r, n):
        z = np.asarray(r.nodes, dtype=float)
        w = np.asarray(r.weights, dtype=float)
        v = np.asarray(r.values, dtype=float)
        at_inf = z == 0
        self.n = n
        self.inf_num = float(np.sum(w[at_inf] * v[at_inf]))
        self.inf_den = float(np.sum(w[at_inf]))
        zf = z[~at_inf]
        self.nodes = n * (zf - 1) / zf
        self.weights = w[~at_inf] * (n - self.nodes)
        self.values = v[~at_inf]

    def __call__(self, s):
        s = np.atleast_1d(np.asarray(s, dtype=float))
        out = np.empty_like(s)
        fin = np.isfinite(s)
        sf = s[fin]
        D = sf[:, None] - self.nodes[None, :]
        hit = D == 0
        with np.errstate(divide="ignore", invalid="ignore"):
            C = 1 / np.where(hit, 1.0, D)
            num = C @ (self.weights * self.values) + self.inf_num
            den = C @ self.weights + self.inf_den
            vals = num / den
        rows, cols = np.nonzero(hit)
        vals[rows] = self.values[cols]
        out[fin] = vals
        if self.inf_den != 0:
            out[~fin] = self.inf_num / self.inf_den
        else:
            out[~fin] = np.sum(self.weights * self.values) / np.sum(self.weights)
        return out


def transplant(r, n) -> TransplantedRational:
    return TransplantedRational(r, n)


def transplanted_sup_error(r, n, c: float = 4.0, n_points: int = 8192) -> float:
    """sup over s in (-inf, 0] of |g_n(s) - r(x(s))|, scanned through the chart."""
    rs = transplant(r, n)
    g = TransplantedTarget(n)

    def err(y):
        with np.errstate(divide="ignore"):
            s = -c * (1 - np.asarray(y, dtype=float)) / (1 + np.asarray(y, dtype=float))
        return g(s) - rs(s)
    return sup_scan(err, -1.0, 1.0, n_points)


# --- gap between g_n and exp ------------------------------------------------

def _log_ratio(s, n):
    """psi(s) = log(g_n(s)) - s = n (u - log1p(u)), u = -s/n >= 0."""
    M = mpmath if is_extended() else math
    u = -s / n
    if u < 1e-3 and not is_extended():
        return n * u * u * (0.5 - u * (1 / 3 - u * (0.25 - u * (0.2 - u / 6))))
    return n * (u - M.log1p(u))


def _log_ratio_array(s, n):
    u = -np.asarray(s, dtype=float) / n
    series = u * u * (0.5 - u * (1 / 3 - u * (0.25 - u * (0.2 - u / 6))))
    with np.errstate(invalid="ignore"):
        direct = u - np.log1p(u)
    return n * np.where(u < 1e-3, series, direct)


def gap(s, n):
    """g_n(s) - exp(s).

    Written as exp(s) expm1(psi(s)) where the two terms nearly cancel
    (psi <= 1) and as a plain difference elsewhere.
    """
    if np.ndim(s) == 0:
        M = mpmath if is_extended() else math
        psi = _log_ratio(s, n)
        if psi <= 1:
            return M.exp(s) * M.expm1(psi)
        return M.exp(s + psi) - M.exp(s)
    s = np.asarray(s, dtype=float)
    psi = _log_ratio_array(s, n)
    with np.errstate(over="ignore", invalid="ignore"):
        near = np.exp(s) * np.expm1(np.minimum(psi, 1.0))
        far = np.exp(s + psi) - np.exp(s)
    return np.where(psi <= 1, near, far)


def _stationarity(s, n):
    """log of (1 - s/n)^-(n+1) / e^s; zero at the maximizer of the gap."""
    M = mpmath if is_extended() else math
    return -(n + 1) * M.log1p(-s / n) - s


@dataclass(frozen=True)
class Lemma2Result:
    n: float
    sigma: float
    max_gap: float
    closed_form: float
    identity_rel_err: float
    bound: float
    scan_max: float
    scan_argmax: float
    all_positive: bool
    bracket_expanded: bool = False
    used_scan: bool = False

    @property
    def within_bound(self) -> bool:
        return self.max_gap <= self.bound and self.scan_max <= self.bound


def lemma2_gap(n, scan_points: int = 10**6, scan_range=(1e-6, 1e6)) -> Lemma2Result:
    """Maximize g_n(s) - exp(s) over s < 0 and check it against 1/(e n).

    The maximizer solves (1 - s/n)^-(n+1) = e^s and is found by bisection,
    starting from the bracket [-n(1 - 1e-12), -1e-12].  For n below about
    2.26 the root lies left of -n; the bracket is then doubled until it
    straddles the root (``bracket_expanded``), and if that fails the scan
    maximum is used (``used_scan``).  Independently, the gap is scanned on
    ``scan_points`` log-spaced points of ``-[scan_range]``.
    """
    if not n > 0:
        raise ValueError("n must be positive")
    extended = is_extended()
    M = mpmath if extended else math
    ctx = mpmath.workprec(get_precision_bits()) if extended else contextlib.nullcontext()
    with ctx:
        nn = mpmath.mpf(n) if extended else float(n)
        lo, hi = -nn * (1 - 1e-12), -(mpmath.mpf(1e-12) if extended else 1e-12)
        expanded = used_scan = False
        if _stationarity(lo, nn) <= 0:
            expanded = True
            for _ in range(200):
                lo *= 2
                if _stationarity(lo, nn) > 0:
                    break
            else:
                used_scan = True

        s_scan = -np.logspace(math.log10(scan_range[0]), math.log10(scan_range[1]),
                              scan_points)
        g_scan = gap(s_scan, float(n))
        i_max = int(np.argmax(g_scan))
        positive = bool(np.all(_log_ratio_array(s_scan, float(n)) > 0))

        if used_scan:
            sigma = M.mpf(s_scan[i_max]) if extended else float(s_scan[i_max])
        else:
            for _ in range(4 * get_precision_bits()):
                mid = (lo + hi) / 2
                if mid == lo or mid == hi:
                    break
                if _stationarity(mid, nn) > 0:
                    lo = mid
                else:
                    hi = mid
            sigma = (lo + hi) / 2
        max_gap = gap(sigma, nn)
        closed = -sigma * M.exp(sigma) / nn
        rel = abs(max_gap - closed) / closed
        bound = 1 / (M.e * nn)
    return Lemma2Result(n=n, sigma=sigma, max_gap=max_gap, closed_form=closed,
                        identity_rel_err=float(rel), bound=bound,
                        scan_max=float(g_scan[i_max]), scan_argmax=float(s_scan[i_max]),
                        all_positive=positive, bracket_expanded=expanded, used_scan=used_scan)


# --- half-line exponential and the even reduction ----------------------------

def exp_halfline_error(k: int, c: float = 4.0, *, full_output: bool = False, **opts):
    """Best type-(k, k) error for exp(s) on (-inf, 0].

    The half line is mapped to [-1, 1] by s = -c(1-y)/(1+y); any c > 0 gives
    the same minimax error.
    """
    res: RationalMinimaxResult = rational_remez(ExpHalfLine(c), k, (-1.0, 1.0), **opts)
    return res if full_output else res.error


def transplanted_error(n, k: int, c: float = 4.0, *, full_output: bool = False, **opts):
    """Best type-(k, k) error for (1 - s/n)^(-n) on (-inf, 0], solved in the chart."""
    res = rational_remez(TransplantedPower(n, c), k, (-1.0, 1.0), **opts)
    return res if full_output else res.error


def even_reduction(n, k: int):
    """Reduce type-(k, k) approximation of x^n on [-1, 1] (n even) to [0, 1].

    Substituting s = x^2 turns it into type (k//2, k//2) approximation of
    x^(n/2) on [0, 1]; for odd k the best approximant is even and so has
    type (k-1, k-1).
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    if not (float(n).is_integer() and n >= 0):
        raise ValueError(f"n must be a nonnegative even integer, got {n}")
    if int(n) % 2:
        raise ValueError(
            f"n = {n} is odd: x^n on [-1, 1] is not an even function, and its best "
            "errors only approximately match those of x^(n/2) on [0, 1]; no exact "
            "reduction applies")
    return int(n) // 2, k // 2


def fit_halphen_rate(ks=range(5, 9), c: float = 4.0, **opts) -> float:
    """Estimate H as the geometric decay rate of the half-line exp errors."""
    ks = np.asarray(list(ks))
    errs = np.array([float(exp_halfline_error(int(k), c, **opts)) for k in ks])
    slope = np.polyfit(ks, np.log(errs), 1)[0]
    return float(np.exp(slope))
