import numpy as np
import pytest

from halphen._alternation import sup_scan
from halphen.diffcorr import differential_correction
from halphen.models import halfline_chart, halfline_grid, halphen_model, transplanted_sup_error
from halphen.poly_remez import remez_poly
from halphen.precision import working_precision
from halphen.rational_remez import rational_remez
from halphen.targets import Power


def scan_error(f, r, lo=0.0, hi=1.0):
    return sup_scan(lambda x: f(x) - r(x), lo, hi, 2048)


class TestExamples:
    @pytest.mark.parametrize("n", [3, 1000])
    def test_constant(self, n):
        res = rational_remez(Power(n), 0)
        assert res.error == pytest.approx(0.5, abs=1e-13)

    def test_identity_exact(self):
        res = rational_remez(Power(1), 1)
        assert res.error <= 1e-13
        assert res.converged

    def test_x1000_k5_near_model(self):
        res = rational_remez(Power(1000), 5)
        model = halphen_model(5)
        assert model / 2 <= res.error <= 2 * model


@pytest.mark.parametrize("n, k", [(2, 1), (100, 2), (1000, 3), (1000, 5), (1000, 8)])
def test_certificate_and_scan(n, k):
    res = rational_remez(Power(n), k)
    assert res.converged and res.defect == 0
    assert len(res.certificate) == 2 * k + 2
    assert res.certificate.is_valid(1e-3, (0, 1))
    assert res.approximant.is_pole_free(0, 1)
    scan = scan_error(Power(n), res.approximant)
    assert scan == pytest.approx(res.error, rel=1e-3)


@pytest.mark.parametrize("n, k", [(100, 2), (1000, 3), (1000, 5)])
def test_oracle_sandwich(n, k):
    res = rational_remez(Power(n), k)
    grid = halfline_grid(n, 2049)
    dc = differential_correction(Power(n), k, grid, chart=halfline_chart(n))
    scan = scan_error(Power(n), res.approximant)
    assert dc <= res.error * (1 + 1e-12)
    assert res.error <= scan * (1 + 1e-12)
    assert (scan - dc) / scan <= 1e-3


def test_strictly_decreasing_in_k():
    errs = [rational_remez(Power(1000), k).error for k in range(9)]
    assert all(b < a for a, b in zip(errs, errs[1:]))


@pytest.mark.parametrize("n", [50, 250])
def test_rational_beats_polynomial(n):
    for k in range(7):
        assert rational_remez(Power(n), k).error <= remez_poly(Power(n), k).error * (1 + 1e-9)


@pytest.mark.parametrize("n, k", [(100, 2), (1000, 3), (1000, 6)])
def test_mobius_invariance(n, k):
    res = rational_remez(Power(n), k)
    e_s = transplanted_sup_error(res.approximant, n)
    assert e_s == pytest.approx(res.error, rel=1e-6)


class TestDegenerate:
    def test_odd_type_on_symmetric_interval(self):
        r4 = rational_remez(Power(100), 4, (-1, 1))
        r5 = rational_remez(Power(100), 5, (-1, 1))
        assert r4.defect == 0
        assert r5.defect >= 1
        assert r5.error == pytest.approx(r4.error, rel=1e-6)
        assert r5.approximant.is_pole_free(-1, 1)


class TestDiscrete:
    def test_points_give_lower_bound(self):
        x = np.linspace(0, 1, 300)
        d = rational_remez(Power(30), 2, points=x).error
        c = rational_remez(Power(30), 2).error
        assert d <= c * (1 + 1e-12)
        assert d == pytest.approx(c, rel=0.05)

    def test_value_array_target(self):
        x = np.linspace(0, 1, 300)
        a = rational_remez(x**30, 2, points=x).error
        b = rational_remez(Power(30), 2, points=x).error
        assert a == pytest.approx(b, rel=1e-12)


class TestErrors:
    def test_negative_k(self):
        with pytest.raises(ValueError):
            rational_remez(Power(2), -1)

    def test_grid_too_small(self):
        with pytest.raises(ValueError):
            rational_remez(Power(2), 5, grid_size=8)

    def test_points_outside_domain(self):
        with pytest.raises(ValueError):
            rational_remez(Power(2), 1, points=np.linspace(0, 2, 20))


def test_extended_precision_polish():
    e53 = rational_remez(Power(1000), 9).error
    with working_precision(128):
        res = rational_remez(Power(1000), 9)
        assert res.converged
        assert res.certificate.residual_defect <= 1e-6
    assert float(res.error) == pytest.approx(e53, rel=1e-3)
