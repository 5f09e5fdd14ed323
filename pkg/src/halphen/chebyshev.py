"""Chebyshev grids, interpolation, Clenshaw evaluation and adaptive construction.

Series are stored as coefficients of T_0, T_1, ... on an :class:`Interval`.
At 53-bit precision everything is NumPy ``float64`` and the value-to-coefficient
transform is a type-I DCT; at extended precision arrays hold ``mpmath.mpf``
objects and the transform is the direct O(m^2) sum.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import mpmath
import numpy as np
import scipy.fft

from .precision import (
    DOUBLE_BITS,
    get_precision_bits,
    is_extended,
    to_scalar,
    working_precision,
)


class ChebyshevConvergenceError(RuntimeError):
    """Raised when a function cannot be resolved to the requested tolerance."""


@dataclass(frozen=True)
class Interval:
    """A closed, bounded real interval ``[lo, hi]``."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = to_scalar(self.lo), to_scalar(self.hi)
        if not (mpmath.isfinite(lo) and mpmath.isfinite(hi)):
            raise ValueError("interval endpoints must be finite")
        if not lo < hi:
            raise ValueError(f"degenerate interval [{lo}, {hi}]")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @classmethod
    def coerce(cls, domain) -> "Interval":
        if isinstance(domain, Interval):
            return domain
        lo, hi = domain
        return cls(lo, hi)

    @property
    def length(self):
        return self.hi - self.lo

    def to_unit(self, x):
        """Affine map ``[lo, hi] -> [-1, 1]``."""
        return (2 * x - (self.lo + self.hi)) / (self.hi - self.lo)

    def from_unit(self, t):
        return self.lo + (self.hi - self.lo) * (t + 1) / 2

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.lo) & (x <= self.hi)))

    def __iter__(self):
        yield self.lo
        yield self.hi


with working_precision(DOUBLE_BITS):
    UNIT = Interval(-1.0, 1.0)


def _unit_points(m: int):
    """Second-kind Chebyshev points on [-1, 1], ascending, exactly symmetric."""
    if is_extended():
        with mpmath.workprec(get_precision_bits()):
            t = [mpmath.sin(mpmath.pi * (2 * j - m) / (2 * m)) for j in range(m + 1)]
        return np.array(t, dtype=object)
    j = np.arange(m + 1)
    return np.sin(np.pi * (2 * j - m) / (2 * m))


def cheb_points(m: int, domain=UNIT) -> np.ndarray:
    """Return the ``m + 1`` Chebyshev points of the second kind on ``domain``.

    Points are sorted ascending and the first and last are exactly the
    interval endpoints.
    """
    if m < 1:
        raise ValueError(f"need m >= 1, got {m}")
    domain = Interval.coerce(domain)
    t = _unit_points(m)
    x = domain.from_unit(t)
    x[0], x[-1] = domain.lo, domain.hi
    return x


def _values_to_coeffs(values: np.ndarray) -> np.ndarray:
    m = len(values) - 1
    if m == 0:
        return values.copy()
    if values.dtype == object:
        with mpmath.workprec(get_precision_bits()):
            # ascending nodes t_i = -cos(pi i / m), so T_j(t_i) = (-1)^j cos(pi i j / m)
            coeffs = []
            for j in range(m + 1):
                acc = mpmath.mpf(0)
                for i, v in enumerate(values):
                    w = mpmath.mpf(1) / 2 if i in (0, m) else 1
                    acc += w * v * mpmath.cospi(mpmath.mpf(i * j) / m)
                c = 2 * acc / m * (-1) ** j
                if j in (0, m):
                    c /= 2
                coeffs.append(c)
        return np.array(coeffs, dtype=object)
    # DCT-I wants values at cos(pi i / m), i.e. descending nodes
    c = scipy.fft.dct(values[::-1], type=1) / m
    c[0] /= 2
    c[-1] /= 2
    return c


def _coeffs_to_values(coeffs: np.ndarray) -> np.ndarray:
    """Values at the ascending Chebyshev points; inverse of :func:`_values_to_coeffs`."""
    m = len(coeffs) - 1
    if m == 0:
        return coeffs.copy()
    if coeffs.dtype == object:
        with mpmath.workprec(get_precision_bits()):
            vals = [mpmath.fsum(c * (-1) ** j * mpmath.cospi(mpmath.mpf(i * j) / m)
                                for j, c in enumerate(coeffs)) for i in range(m + 1)]
        return np.array(vals, dtype=object)
    c = np.array(coeffs, dtype=float)
    c[0] *= 2
    c[-1] *= 2
    return (scipy.fft.dct(c, type=1) / 2)[::-1]


def _clenshaw(coeffs: np.ndarray, t):
    b1 = b2 = 0 * t
    for c in coeffs[:0:-1]:
        b1, b2 = 2 * t * b1 - b2 + c, b1
    return t * b1 - b2 + coeffs[0]


@dataclass(frozen=True)
class ChebSeries:
    """Polynomial sum_j c_j T_j(t(x)) with t the affine map of ``domain`` to [-1, 1]."""

    coeffs: np.ndarray
    domain: Interval = UNIT

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=object if is_extended() else float)
        if c.ndim != 1 or len(c) == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "domain", Interval.coerce(self.domain))
        object.__setattr__(self, "_nodes", {})

    def node_values(self):
        """Own Chebyshev points and the series values there (cached per precision)."""
        bits = get_precision_bits()
        if bits not in self._nodes:
            self._nodes[bits] = (cheb_points(self.degree, self.domain),
                                 _coeffs_to_values(self.coeffs))
        return self._nodes[bits]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        return cheb_eval(self, x)

    def __len__(self):
        return len(self.coeffs)


def cheb_fit(samples, domain=UNIT) -> ChebSeries:
    """Interpolate samples taken at ``cheb_points(len(samples) - 1, domain)``."""
    values = np.asarray(samples, dtype=object if is_extended() else float)
    if values.ndim != 1:
        raise ValueError("samples must be 1-d")
    if len(values) < 2:
        raise ValueError("need at least two samples (m >= 1)")
    return ChebSeries(_values_to_coeffs(values), domain)


def cheb_eval(series: ChebSeries, x):
    """Evaluate ``series`` at ``x`` (scalar or array) by Clenshaw recurrence.

    Points that coincide with the series' own Chebyshev points take their
    values from the inverse transform instead, which is accurate to a few
    ulps there.
    """
    dom = series.domain
    scalar = np.ndim(x) == 0
    xa = np.atleast_1d(np.asarray(x, dtype=object if is_extended() else float))
    if np.any(xa < dom.lo) or np.any(xa > dom.hi):
        raise ValueError(f"evaluation point outside domain [{dom.lo}, {dom.hi}]")
    t = dom.to_unit(xa)
    if t.dtype != object:
        np.clip(t, -1.0, 1.0, out=t)
    y = _clenshaw(series.coeffs, t)
    if series.degree > 0:
        # at the series' own nodes the inverse transform is more accurate
        nodes, vals = series.node_values()
        idx = np.clip(np.searchsorted(nodes, xa), 0, len(nodes) - 1)
        hit = nodes[idx] == xa
        if hit.any():
            y = np.array(y, dtype=vals.dtype)
            y[hit] = vals[idx[hit]]
    return y[0] if scalar else y


def chop_length(coeffs, tol: float) -> int:
    """Number of coefficients worth keeping, or ``len(coeffs)`` if unresolved.

    The coefficient envelope (running max from the tail) is scanned for the
    first index followed by a plateau, i.e. a stretch of about a quarter of the
    index plus five coefficients over which the envelope stops decaying.  The
    cut is then placed where the envelope, biased upward toward the tail, is
    smallest.  Fewer than 17 coefficients are never judged resolved.
    """
    if not 0 < tol < 1:
        raise ValueError("tol must lie in (0, 1)")
    n = len(coeffs)
    if n < 17:
        return n
    b = np.abs(np.asarray(coeffs, dtype=float))
    env = np.maximum.accumulate(b[::-1])[::-1]
    if env[0] == 0:
        return 1
    env = env / env[0]

    log_tol = np.log(tol)
    plateau_point = None
    j2 = 0
    for j in range(2, n + 1):
        j2 = round(1.25 * j + 5)
        if j2 > n:
            return n
        e1, e2 = env[j - 1], env[j2 - 1]
        if e1 == 0:
            plateau_point = j - 1
            break
        if e2 / e1 > 3 * (1 - np.log(e1) / log_tol):
            plateau_point = j - 1
            break

    if env[plateau_point - 1] == 0:
        return plateau_point
    floor = tol ** (7 / 6)
    j3 = int(np.sum(env >= floor))
    if j3 < j2:
        j2 = j3 + 1
        env = env.copy()
        env[j2 - 1] = floor
    biased = np.log10(env[:j2]) + np.linspace(0, -np.log10(tol) / 3, j2)
    return max(int(np.argmin(biased)), 1)


def tail_length(coeffs, tol: float) -> int:
    """Shortest prefix whose discarded tail is at most ``tol`` times the largest coefficient."""
    b = np.abs(np.asarray(coeffs, dtype=float))
    if b.max() == 0:
        return 1
    env = np.maximum.accumulate(b[::-1])[::-1] / b.max()
    below = np.flatnonzero(env <= tol)
    return max(int(below[0]), 1) if len(below) else len(b)


# Coefficients are first resolved down to their rounding plateau, judged at
# this tolerance, so that the sampling grid does not depend on the user's tol.
RESOLVE_TOL = 2.0**-52


def adaptive_fit(
    f: Callable, domain=UNIT, tol: float = 1e-15, max_points: int = 2**20
) -> ChebSeries:
    """Construct a chopped Chebyshev series for ``f`` resolved to relative ``tol``.

    ``f`` is sampled on grids of 17, 33, 65, ... points until the coefficient
    tail settles on its rounding plateau (:func:`chop_length` at
    ``RESOLVE_TOL``).  The series is then cut at the shorter of the plateau
    point and the first index after which every coefficient is below ``tol``
    relative to the largest.  Because the grid does not depend on ``tol`` and
    the second cut is monotone in it, looser tolerances never give higher
    degrees.  Functions too rough to reach a plateau at ``RESOLVE_TOL`` are
    resolved at ``tol`` instead.

    Raises
    ------
    ChebyshevConvergenceError
        If no plateau appears before ``max_points`` samples.
    """
    if not 0 < tol < 1:
        raise ValueError("tol must lie in (0, 1)")
    domain = Interval.coerce(domain)
    for resolve_tol in dict.fromkeys((min(RESOLVE_TOL, tol), tol)):
        m = 16
        while m <= max_points:
            x = cheb_points(m, domain)
            coeffs = _values_to_coeffs(np.asarray(f(x), dtype=x.dtype))
            if not np.all(np.isfinite(coeffs.astype(float))):
                raise ChebyshevConvergenceError("function returned non-finite values")
            keep = chop_length(coeffs, resolve_tol)
            if keep < len(coeffs):
                keep = min(keep, tail_length(coeffs, tol))
                return ChebSeries(coeffs[:keep], domain)
            m *= 2
    raise ChebyshevConvergenceError(
        f"function not resolved to tol={tol:g} with {max_points} points"
    )
