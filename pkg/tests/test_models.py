import math

import mpmath
import numpy as np
import pytest

from halphen.models import (
    HALPHEN_H,
    HALPHEN_INVERSE,
    MobiusMap,
    TransplantedTarget,
    even_reduction,
    exp_halfline_error,
    fit_halphen_rate,
    gap,
    halphen_constant,
    halphen_model,
    lemma2_gap,
    transplanted_error,
)
from halphen.precision import working_precision
from halphen.rational_remez import rational_remez
from halphen.targets import Power

# 1/9.2890254919208 and 2/sqrt(9.2890254919208), evaluated with mpmath at 40 digits
H_40 = 0.1076539192264847958717107583359229187978
MODEL_K0 = 0.6562131337499571742984358026114034331652


class TestHalphen:
    def test_constant_digits(self):
        assert HALPHEN_INVERSE == "9.2890254919208"
        assert HALPHEN_H == pytest.approx(H_40, rel=1e-15)
        assert 0 < HALPHEN_H < 1 / 9

    def test_extended_constant(self):
        with working_precision(128):
            h = halphen_constant()
            assert isinstance(h, mpmath.mpf)
            assert abs(h - mpmath.mpf("0.1076539192264847958717107583359229187978")) < 1e-36

    def test_k0(self):
        assert halphen_model(0) == pytest.approx(MODEL_K0, rel=1e-15)

    def test_geometric_ratio(self):
        for k in range(10):
            assert halphen_model(k + 1) / halphen_model(k) == pytest.approx(HALPHEN_H, rel=1e-14)

    def test_k5(self):
        assert halphen_model(5) == pytest.approx(2 * H_40**5.5, rel=1e-14)
        # same decade as the value read off the plotted model line
        assert 1.5e-5 / 2 <= halphen_model(5) <= 1.5e-5 * 2

    def test_negative(self):
        with pytest.raises(ValueError):
            halphen_model(-1)

    def test_rate_recovered_from_exp_errors(self):
        assert fit_halphen_rate(range(5, 9)) == pytest.approx(HALPHEN_H, rel=0.01)


class TestMobius:
    def test_anchors(self):
        assert MobiusMap(37).x_of_s(0.0) == 1.0
        assert MobiusMap(2).x_of_s(1.0) == 2.0
        assert MobiusMap(5).x_of_s(-math.inf) == 0.0
        assert MobiusMap(5).s_of_x(0.0) == -math.inf
        assert MobiusMap(5).s_of_x(1.0) == 0.0

    def test_round_trip(self):
        m = MobiusMap(1000)
        assert m.s_of_x(m.x_of_s(-7.3)) == pytest.approx(-7.3, rel=1e-13)
        # x = n/(n - s) keeps only about eps * n/|s| of s, so the grid stays
        # where the round trip is well conditioned
        for n in (0.5, 3, 1000):
            s = -n * np.logspace(-2, 4, 500)
            mm = MobiusMap(n)
            np.testing.assert_allclose(mm.s_of_x(mm.x_of_s(s)), s, rtol=1e-13)

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            MobiusMap(3).x_of_s(3.0)
        with pytest.raises(ValueError):
            MobiusMap(-1)


class TestTransplantedTarget:
    @pytest.mark.parametrize("n", [1, 10, 1000])
    def test_shape(self, n):
        g = TransplantedTarget(n)
        s = -np.logspace(-4, 3, 400)[::-1]
        vals = g(s)
        assert g(np.array([0.0]))[0] == 1.0
        assert np.all(np.diff(vals) > 0)
        assert np.all(vals > np.exp(s))

    def test_equals_power_through_map(self):
        n = 250
        s = -np.linspace(0.01, 40, 100)
        x = MobiusMap(n).x_of_s(s)
        np.testing.assert_allclose(TransplantedTarget(n)(s), x**n, rtol=1e-12)


class TestLemma2:
    @pytest.mark.parametrize("n", [1, 10, 100, 1000, 10000])
    def test_bound_positivity_identity(self, n):
        res = lemma2_gap(n)
        assert res.within_bound
        assert res.all_positive
        assert res.identity_rel_err <= 1e-10
        assert not res.used_scan

    def test_n1_scan_matches_bisection(self):
        res = lemma2_gap(1)
        assert res.scan_max == pytest.approx(res.max_gap, rel=1e-8)

    def test_n1_root_left_of_minus_n(self):
        res = lemma2_gap(1)
        assert res.bracket_expanded
        assert res.sigma < -1

    def test_large_n_limit(self):
        # sigma -> -2 and max_gap * e * n -> 2/e
        res = lemma2_gap(10**4)
        assert res.sigma == pytest.approx(-2.0, rel=1e-3)
        assert res.max_gap * math.e * 10**4 == pytest.approx(2 / math.e, rel=0.02)

    def test_gap_stable_near_zero(self):
        s = -1e-9
        n = 10.0
        with mpmath.workdps(50):
            exact = (1 - mpmath.mpf(s) / n) ** (-n) - mpmath.exp(mpmath.mpf(s))
        assert gap(s, n) == pytest.approx(float(exact), rel=1e-10)

    def test_extended_identity(self):
        with working_precision(128):
            res = lemma2_gap(100, scan_points=10**4)
            assert res.identity_rel_err <= 1e-30


class TestExpHalfLine:
    def test_k0(self):
        assert exp_halfline_error(0) == pytest.approx(0.5, abs=1e-13)

    @pytest.mark.parametrize("k", [4, 5, 6, 7, 8])
    def test_ratio_to_model(self, k):
        assert 0.9 <= exp_halfline_error(k) / halphen_model(k) <= 1.1

    @pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
    def test_close_to_x1000(self, k):
        e = rational_remez(Power(1000), k).error
        assert abs(e - exp_halfline_error(k)) <= 1 / (math.e * 1000)

    @pytest.mark.parametrize("k", [2, 4])
    def test_chart_parameter_irrelevant(self, k):
        errs = [exp_halfline_error(k, c) for c in (2.0, 4.0, 9.0)]
        assert max(errs) / min(errs) - 1 <= 1e-6


class TestTransplantEquivalence:
    @pytest.mark.parametrize("n, k", [(100, 2), (1000, 3)])
    def test_lemma1(self, n, k):
        e_x = rational_remez(Power(n), k).error
        e_s = transplanted_error(n, k)
        assert e_s == pytest.approx(e_x, rel=1e-6)

    @pytest.mark.parametrize("n", [100, 1000, 10000])
    @pytest.mark.parametrize("k", [1, 2, 3])
    def test_limit_law(self, n, k):
        e = rational_remez(Power(n), k).error
        assert abs(e - exp_halfline_error(k)) <= 1 / (math.e * n)

    def test_independent_of_n(self):
        errs = [rational_remez(Power(n), 3).error for n in (500, 1000, 2000, 4000)]
        assert (max(errs) - min(errs)) / min(errs) < 0.1


class TestEvenReduction:
    def test_examples(self):
        assert even_reduction(100, 4) == (50, 2)
        assert even_reduction(100, 5) == (50, 2)
        assert even_reduction(0, 3) == (0, 1)

    def test_odd_n_rejected(self):
        with pytest.raises(ValueError, match="odd"):
            even_reduction(99, 4)
        with pytest.raises(ValueError):
            even_reduction(2.5, 4)

    def test_numeric(self):
        n_half, k_half = even_reduction(100, 4)
        full = rational_remez(Power(100), 4, (-1, 1)).error
        half = rational_remez(Power(n_half), k_half).error
        assert full == pytest.approx(half, rel=1e-6)
