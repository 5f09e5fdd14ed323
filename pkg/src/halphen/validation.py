"""Input checks shared by the estimators."""

from __future__ import annotations

import numpy as np
from sklearn.utils.validation import check_array, check_consistent_length

from .chebyshev import Interval


def check_points(X, name: str = "X") -> np.ndarray:
    """Return ``X`` as a 1-d float array of abscissae.

    Accepts a 1-d array or an ``(m, 1)`` column, as produced by most
    sklearn pipelines.
    """
    X = np.asarray(X)
    if X.ndim == 1:
        X = X[:, None]
    X = check_array(X, dtype=np.float64, ensure_2d=True, input_name=name)
    if X.shape[1] != 1:
        raise ValueError(f"{name} must have exactly one feature, got {X.shape[1]}")
    return X[:, 0]


def check_samples(X, y, min_samples: int = 1):
    """Validate paired sample points and values; points must be distinct."""
    x = check_points(X)
    y = check_array(np.asarray(y), dtype=np.float64, ensure_2d=False, input_name="y")
    if y.ndim != 1:
        raise ValueError("y must be 1-d")
    check_consistent_length(x, y)
    if len(np.unique(x)) != len(x):
        raise ValueError("sample points must be distinct")
    if len(x) < min_samples:
        raise ValueError(f"need at least {min_samples} samples, got {len(x)}")
    return x, y


def check_domain(domain) -> Interval:
    try:
        return Interval.coerce(domain)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"invalid domain {domain!r}: {exc}") from None


def check_degree(k, name: str = "degree") -> int:
    if isinstance(k, bool) or not float(k).is_integer() or k < 0:
        raise ValueError(f"{name} must be a nonnegative integer, got {k!r}")
    return int(k)
