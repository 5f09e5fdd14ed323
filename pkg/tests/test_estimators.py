import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from halphen.estimators import (
    AAAApproximant,
    ChebyshevInterpolant,
    MinimaxPolynomial,
    MinimaxRational,
)
from halphen.targets import Power


def test_polynomial_callable():
    est = MinimaxPolynomial(degree=1).fit(Power(2))
    assert est.error_ == pytest.approx(0.125, abs=1e-12)
    np.testing.assert_allclose(est.predict([0.0, 0.5, 1.0]), [-0.125, 0.375, 0.875], atol=1e-12)
    assert len(est.certificate_) == 3
    assert est.n_iter_ >= 1


def test_polynomial_samples_use_hull():
    x = np.linspace(2, 3, 60)
    est = MinimaxPolynomial(degree=2).fit(x[:, None], np.exp(x))
    assert float(est.domain_.lo) == 2 and float(est.domain_.hi) == 3
    assert np.max(np.abs(est.predict(x) - np.exp(x))) == pytest.approx(est.error_, rel=1e-9)


def test_rational_callable_and_score():
    est = MinimaxRational(degree=3).fit(Power(1000))
    assert est.status_ == "converged" and est.defect_ == 0
    x = np.linspace(0, 1, 500)
    assert est.score(x[:, None], x**1000) > 0.99


def test_rational_samples():
    x = np.linspace(0, 1, 200)
    est = MinimaxRational(degree=2).fit(x, x**10)
    assert np.max(np.abs(est.predict(x) - x**10)) == pytest.approx(est.error_, rel=1e-9)


def test_aaa():
    x = np.linspace(-1, 1, 100)
    est = AAAApproximant(max_degree=8).fit(x, np.exp(x))
    assert est.error_ < 1e-12


def test_chebyshev():
    est = ChebyshevInterpolant().fit(Power(64))
    assert est.degree_ == 44
    with pytest.raises(TypeError):
        ChebyshevInterpolant().fit(np.ones(5), np.ones(5))


def test_params_and_clone():
    est = MinimaxRational(degree=4, grid_size=1024)
    assert est.get_params()["grid_size"] == 1024
    c = clone(est.set_params(degree=5))
    assert c.degree == 5 and not hasattr(c, "approximant_")


def test_not_fitted():
    with pytest.raises(NotFittedError):
        MinimaxPolynomial().predict([0.5])


@pytest.mark.parametrize("bad", [-1, 1.5, True])
def test_invalid_degree(bad):
    with pytest.raises(ValueError):
        MinimaxPolynomial(degree=bad).fit(Power(2))


def test_invalid_samples():
    with pytest.raises(ValueError):
        MinimaxPolynomial(degree=1).fit(np.ones((5, 2)), np.ones(5))
    with pytest.raises(ValueError):
        MinimaxPolynomial(degree=1).fit(np.array([0.0, 0.0, 1.0]), np.ones(3))
    with pytest.raises(ValueError):
        MinimaxPolynomial(degree=1).fit(np.linspace(0, 1, 5), np.ones(4))
    with pytest.raises(ValueError):
        MinimaxPolynomial(degree=1).fit(np.array([0.0, np.nan, 1.0]), np.ones(3))
    with pytest.raises(ValueError):
        MinimaxRational(degree=3).fit(np.linspace(0, 1, 5), np.ones(5))
