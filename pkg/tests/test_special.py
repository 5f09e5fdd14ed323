import numpy as np
import pytest

from halphen.poly_remez import newman_rivlin
from halphen.precision import working_precision
from halphen.special import erfc

# 2/sqrt(pi) * int_1^inf exp(-t^2) dt by adaptive quadrature at 40 digits
ERFC_1 = 0.1572992070502851306587793649173907407039


def test_zero():
    assert erfc(0.0) == 1.0


def test_one_against_quadrature():
    assert erfc(1.0) == pytest.approx(ERFC_1, rel=1e-14)


def test_one_extended():
    with working_precision(128):
        assert abs(erfc(1) - __import__("mpmath").mpf("0.1572992070502851306587793649173907407039")) < 1e-36


def test_large_argument_underflows_monotonically():
    x = np.linspace(5, 40, 200)
    y = erfc(x)
    assert np.all(np.diff(y) <= 0)
    assert y[-1] == 0.0 or y[-1] < 1e-300


def test_reflection():
    x = np.linspace(-5, 5, 1001)
    np.testing.assert_allclose(erfc(x) + erfc(-x), 2.0, rtol=0, atol=1e-14)


def test_strictly_decreasing_on_grid():
    x = np.linspace(-4, 5, 2000)
    assert np.all(np.diff(erfc(x)) < 0)


class TestNewmanRivlin:
    def test_k_zero(self):
        assert newman_rivlin(0, 37) == 0.5

    def test_k_equals_sqrt_n(self):
        assert newman_rivlin(10, 100) == pytest.approx(ERFC_1 / 2, rel=1e-14)
        assert newman_rivlin(10, 100) == pytest.approx(0.0786496, abs=1e-7)

    def test_invalid(self):
        with pytest.raises(ValueError):
            newman_rivlin(-1, 10)
