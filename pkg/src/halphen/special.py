"""Complementary error function at the working precision."""

from __future__ import annotations

import mpmath
import numpy as np
import scipy.special

from .precision import get_precision_bits, is_extended


def erfc(x):
    """erfc(x) = 2/sqrt(pi) * integral_x^inf exp(-t^2) dt.

    Accepts a scalar or an array.  Double precision uses the Cephes
    implementation in SciPy; extended precision uses mpmath.
    """
    if is_extended():
        with mpmath.workprec(get_precision_bits()):
            if np.ndim(x) == 0:
                return mpmath.erfc(x)
            return np.array([mpmath.erfc(v) for v in np.ravel(x)], dtype=object).reshape(
                np.shape(x)
            )
    if np.ndim(x) == 0:
        return float(scipy.special.erfc(float(x)))
    return scipy.special.erfc(np.asarray(x, dtype=float))
