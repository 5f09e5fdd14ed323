"""scikit-learn style wrappers around the approximation routines.

Every estimator is fitted either to a callable target on an interval,
``est.fit(f)``, or to a finite sample, ``est.fit(X, y)``, in which case the
corresponding discrete problem is solved on the sample points.  ``predict``
evaluates the fitted approximant.

>>> est = MinimaxPolynomial(degree=1).fit(lambda x: x**2)
>>> round(est.error_, 12)
0.125
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin
from sklearn.utils.validation import check_is_fitted

from .barycentric import aaa_fit
from .chebyshev import adaptive_fit
from .poly_remez import remez_poly
from .rational_remez import rational_remez
from .validation import check_degree, check_domain, check_points, check_samples


def _resolve_domain(domain, x=None):
    if domain is None:
        if x is None:
            return check_domain((0.0, 1.0))
        return check_domain((float(np.min(x)), float(np.max(x))))
    return check_domain(domain)


class _ApproximantMixin(RegressorMixin):
    """predict() on top of a fitted ``approximant_``."""

    def predict(self, X):
        check_is_fitted(self, "approximant_")
        x = check_points(X)
        return np.asarray(self.approximant_(x), dtype=float)

    def __sklearn_tags__(self):
        tags = super().__sklearn_tags__()
        tags.target_tags.required = False
        return tags


class MinimaxPolynomial(_ApproximantMixin, BaseEstimator):
    """Best uniform polynomial approximation of degree ``<= degree``.

    Parameters
    ----------
    degree : int
    domain : (lo, hi), optional
        Defaults to [0, 1] for callables and to the sample hull otherwise.
    tol : float
        Relative levelling tolerance of the Remez exchange.
    max_iter : int

    Attributes
    ----------
    approximant_ : ChebSeries
    error_ : float
        Minimax error.
    certificate_ : EquioscillationCertificate
    n_iter_ : int
    """

    def __init__(self, degree=0, domain=None, tol=1e-12, max_iter=100):
        self.degree = degree
        self.domain = domain
        self.tol = tol
        self.max_iter = max_iter

    def fit(self, X, y=None):
        k = check_degree(self.degree)
        if callable(X):
            dom = _resolve_domain(self.domain)
            res = remez_poly(X, k, dom, tol=self.tol, max_iter=self.max_iter)
        else:
            x, y = check_samples(X, y, min_samples=k + 2)
            dom = _resolve_domain(self.domain, x)
            res = remez_poly(y, k, dom, tol=self.tol, max_iter=self.max_iter, points=x)
        self.approximant_ = res.approximant
        self.error_ = res.error
        self.certificate_ = res.certificate
        self.n_iter_ = res.iterations
        self.domain_ = dom
        return self


class MinimaxRational(_ApproximantMixin, BaseEstimator):
    """Best uniform rational approximation of type ``(degree, degree)``.

    Parameters
    ----------
    degree : int
    domain : (lo, hi), optional
    tol : float
        Certificate tolerance (relative levelling defect).
    grid_size : int
        Chebyshev sampling points for the AAA/Lawson start.
    lawson_iters, max_iter : int

    Attributes
    ----------
    approximant_ : BarycentricRational
    error_ : float
    certificate_ : EquioscillationCertificate
    defect_ : int
        Unused degrees of freedom of a degenerate optimum.
    status_ : str
        ``"converged"`` or ``"stagnated"``.
    n_iter_ : int
    """

    def __init__(self, degree=0, domain=None, tol=1e-3, grid_size=4096,
                 lawson_iters=300, max_iter=40):
        self.degree = degree
        self.domain = domain
        self.tol = tol
        self.grid_size = grid_size
        self.lawson_iters = lawson_iters
        self.max_iter = max_iter

    def fit(self, X, y=None):
        k = check_degree(self.degree)
        opts = dict(tol=self.tol, grid_size=self.grid_size,
                    lawson_iters=self.lawson_iters, max_iter=self.max_iter)
        if callable(X):
            dom = _resolve_domain(self.domain)
            res = rational_remez(X, k, dom, **opts)
        else:
            x, y = check_samples(X, y, min_samples=2 * k + 2)
            dom = _resolve_domain(self.domain, x)
            res = rational_remez(y, k, dom, points=x, **opts)
        self.approximant_ = res.approximant
        self.error_ = res.error
        self.certificate_ = res.certificate
        self.defect_ = res.defect
        self.status_ = res.status
        self.n_iter_ = res.iterations
        self.domain_ = dom
        return self


class AAAApproximant(_ApproximantMixin, BaseEstimator):
    """AAA barycentric rational fit of samples (not a minimax fit).

    Parameters
    ----------
    max_degree : int
    tol : float
        Relative sample error at which node selection stops.

    Attributes
    ----------
    approximant_ : BarycentricRational
    error_ : float
        Max error on the fitted samples.
    """

    def __init__(self, max_degree=10, tol=1e-13):
        self.max_degree = max_degree
        self.tol = tol

    def fit(self, X, y=None):
        k = check_degree(self.max_degree, "max_degree")
        x, y = check_samples(X, y, min_samples=2 * k + 2)
        r = aaa_fit(x, y, k, tol=self.tol)
        self.approximant_ = r
        self.error_ = float(np.max(np.abs(y - r(x))))
        return self


class ChebyshevInterpolant(_ApproximantMixin, BaseEstimator):
    """Adaptive Chebyshev interpolant of a callable, chopped at ``tol``.

    Attributes
    ----------
    approximant_ : ChebSeries
    degree_ : int
    """

    def __init__(self, domain=None, tol=1e-15):
        self.domain = domain
        self.tol = tol

    def fit(self, X, y=None):
        if not callable(X):
            raise TypeError("ChebyshevInterpolant is fitted to a callable target")
        dom = _resolve_domain(self.domain)
        self.approximant_ = adaptive_fit(X, dom, tol=self.tol)
        self.degree_ = self.approximant_.degree
        self.domain_ = dom
        return self
