"""Target functions, vectorized over float arrays and mpmath object arrays."""

from __future__ import annotations

import math

import mpmath
import numpy as np

from .precision import get_precision_bits


def _is_mp(x) -> bool:
    return isinstance(x, mpmath.mpf) or (isinstance(x, np.ndarray) and x.dtype == object)


def _mp_map(fun, x):
    with mpmath.workprec(get_precision_bits()):
        if np.ndim(x) == 0:
            return fun(mpmath.mpf(x))
        out = np.empty(np.shape(x), dtype=object)
        for i, v in enumerate(np.ravel(x)):
            out.flat[i] = fun(mpmath.mpf(v))
        return out


class Power:
    """x -> x**n for real n >= 0.

    Integer ``n`` uses repeated multiplication and is defined for negative
    ``x``; non-integer ``n`` is ``exp(n log x)`` on ``x >= 0`` with ``0 -> 0``.
    """

    def __init__(self, n):
        if n < 0:
            raise ValueError("n must be nonnegative")
        self.n = n
        self.integer = float(n).is_integer()

    def _mp(self, v):
        if self.integer:
            return v ** int(self.n)
        if v < 0:
            return mpmath.nan
        return mpmath.mpf(0) if v == 0 and self.n > 0 else mpmath.power(v, self.n)

    def __call__(self, x):
        if _is_mp(x):
            return _mp_map(self._mp, x)
        x = np.asarray(x, dtype=float)
        if self.integer:
            return x ** int(self.n)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(self.n * np.log(x))
        return np.where(x == 0, 0.0 if self.n > 0 else 1.0, out)

    def __repr__(self):
        return f"Power({self.n!r})"


def halfline_s(y, c):
    """The map y in [-1, 1] -> s = -c(1-y)/(1+y) in [-inf, 0]."""
    with np.errstate(divide="ignore"):
        return -c * (1 - y) / (1 + y)


class ExpHalfLine:
    """exp(s) on (-inf, 0] seen through ``s = -c(1-y)/(1+y)``, y in [-1, 1]."""

    def __init__(self, c: float = 4.0):
        if c <= 0:
            raise ValueError("c must be positive")
        self.c = c

    def _mp(self, y):
        if y == -1:
            return mpmath.mpf(0)
        return mpmath.exp(-self.c * (1 - y) / (1 + y))

    def __call__(self, y):
        if _is_mp(y):
            return _mp_map(self._mp, y)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            return np.where(y == -1, 0.0, np.exp(halfline_s(y, self.c)))

    def __repr__(self):
        return f"ExpHalfLine(c={self.c!r})"


class TransplantedPower:
    """(1 - s/n)^(-n) on (-inf, 0] seen through ``s = -c(1-y)/(1+y)``."""

    def __init__(self, n, c: float = 4.0):
        if n <= 0 or c <= 0:
            raise ValueError("n and c must be positive")
        self.n = n
        self.c = c

    def _mp(self, y):
        if y == -1:
            return mpmath.mpf(0)
        s = -self.c * (1 - y) / (1 + y)
        return mpmath.exp(-self.n * mpmath.log1p(-s / self.n))

    def __call__(self, y):
        if _is_mp(y):
            return _mp_map(self._mp, y)
        y = np.asarray(y, dtype=float)
        with np.errstate(divide="ignore", over="ignore", invalid="ignore"):
            u = self.c * (1 - y) / (self.n * (1 + y))
            out = np.exp(-self.n * np.log1p(u))
        return np.where(y == -1, 0.0, out)

    def __repr__(self):
        return f"TransplantedPower({self.n!r}, c={self.c!r})"


def transplanted_power(s, n):
    """g_n(s) = (1 - s/n)^(-n), evaluated stably for s <= 0 (s = -inf gives 0)."""
    if _is_mp(s):
        return _mp_map(lambda v: mpmath.mpf(0) if mpmath.isinf(v)
                       else mpmath.exp(-n * mpmath.log1p(-v / n)), s)
    if np.ndim(s) == 0:
        s = float(s)
        return 0.0 if math.isinf(s) else math.exp(-n * math.log1p(-s / n))
    s = np.asarray(s, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        out = np.exp(-n * np.log1p(-s / n))
    return np.where(np.isinf(s), 0.0, out)
