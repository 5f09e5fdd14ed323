import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from halphen.chebyshev import (
    ChebSeries,
    ChebyshevConvergenceError,
    Interval,
    adaptive_fit,
    cheb_eval,
    cheb_fit,
    cheb_points,
    chop_length,
)
from halphen.precision import working_precision
from halphen.targets import Power

from conftest import ulps


class TestChebPoints:
    def test_endpoints_only(self):
        assert list(cheb_points(1, (-1, 1))) == [-1.0, 1.0]

    def test_midpoint_zero(self):
        assert list(cheb_points(2, (-1, 1))) == [-1.0, 0.0, 1.0]

    def test_middle_of_unit_interval(self):
        x = cheb_points(4, (0, 1))
        assert len(x) == 5 and x[2] == 0.5 and x[0] == 0.0 and x[-1] == 1.0

    def test_sorted_with_exact_ends(self):
        x = cheb_points(37, (0.25, 3.0))
        assert np.all(np.diff(x) > 0)
        assert x[0] == 0.25 and x[-1] == 3.0

    def test_rejects_zero_count(self):
        with pytest.raises(ValueError):
            cheb_points(0, (-1, 1))

    def test_rejects_degenerate_domain(self):
        with pytest.raises(ValueError):
            cheb_points(3, (1, 1))


class TestFitEval:
    def test_constant(self):
        s = cheb_fit(np.ones(6))
        np.testing.assert_allclose(s.coeffs, [1, 0, 0, 0, 0, 0], atol=1e-15)

    def test_identity(self):
        s = cheb_fit(cheb_points(1))
        np.testing.assert_allclose(s.coeffs, [0, 1], atol=1e-16)

    def test_square(self):
        s = cheb_fit(cheb_points(2) ** 2)
        np.testing.assert_allclose(s.coeffs, [0.5, 0, 0.5], atol=1e-16)

    def test_eval_examples(self):
        assert cheb_eval(ChebSeries([0.5, 0, 0.5], Interval(-1, 1)), 1.0) == 1.0
        assert cheb_eval(ChebSeries([0, 1], Interval(-1, 1)), 0.3) == pytest.approx(0.3,
                                                                                    abs=1e-16)

    def test_power_64_against_direct_evaluation(self):
        x = cheb_points(64, (0, 1))
        s = cheb_fit(x**64, (0, 1))
        assert cheb_eval(s, 0.9) == pytest.approx(0.9**64, rel=1e-13)

    def test_extrapolation_rejected(self):
        s = cheb_fit(cheb_points(3, (0, 1)), (0, 1))
        with pytest.raises(ValueError):
            cheb_eval(s, 1.5)
        with pytest.raises(ValueError):
            s(-0.1)

    def test_too_few_samples(self):
        with pytest.raises(ValueError):
            cheb_fit([1.0])

    def test_coefficients_are_read_only(self):
        s = cheb_fit(np.arange(4.0))
        with pytest.raises(ValueError):
            s.coeffs[0] = 1.0

    @settings(max_examples=25, deadline=None)
    @given(m=st.integers(1, 512), seed=st.integers(0, 2**31 - 1))
    def test_round_trip_random_smooth(self, m, seed):
        rng = np.random.default_rng(seed)
        # random smooth function: a short random Chebyshev sum
        c = rng.standard_normal(min(m + 1, 8))
        x = cheb_points(m, (0, 1))
        vals = np.polynomial.chebyshev.chebval(2 * x - 1, c)
        s = cheb_fit(vals, (0, 1))
        back = cheb_eval(s, x)
        scale = np.max(np.abs(vals))
        assert np.max(np.abs(back - vals)) <= 10 * np.spacing(scale)

    def test_round_trip_ulps_at_nodes(self):
        x = cheb_points(100, (0, 1))
        vals = np.exp(x)
        assert np.max(ulps(cheb_eval(cheb_fit(vals, (0, 1)), x), vals)) <= 10

    def test_extended_round_trip(self):
        with working_precision(128):
            x = cheb_points(20, (0, 1))
            vals = Power(7)(x)
            s = cheb_fit(vals, (0, 1))
            back = cheb_eval(s, x)
            assert max(abs(a - b) for a, b in zip(back, vals)) < 1e-35


class TestAdaptive:
    @pytest.mark.parametrize("n, expected", [(1, 1), (4, 4), (16, 16)])
    def test_small_powers_exact(self, n, expected):
        assert adaptive_fit(Power(n), (0, 1), tol=1e-15).degree == expected

    @pytest.mark.parametrize("n, expected", [(64, 44), (4096, 349)])
    def test_large_powers_within_band(self, n, expected):
        k = adaptive_fit(Power(n), (0, 1), tol=1e-15).degree
        assert abs(k - expected) <= 0.1 * expected

    @pytest.mark.parametrize("n", [4, 64, 1024])
    def test_degree_monotone_in_tol(self, n):
        tols = [1e-15, 1e-13, 1e-11, 1e-9, 1e-7, 1e-5, 1e-3]
        degs = [adaptive_fit(Power(n), (0, 1), tol=t).degree for t in tols]
        assert all(a >= b for a, b in zip(degs, degs[1:])), degs

    def test_resolves_function(self):
        s = adaptive_fit(np.exp, (-1, 1), tol=1e-14)
        x = np.linspace(-1, 1, 101)
        np.testing.assert_allclose(s(x), np.exp(x), rtol=1e-13)

    def test_unresolvable(self):
        with pytest.raises(ChebyshevConvergenceError):
            adaptive_fit(np.sign, (-1, 1), tol=1e-15, max_points=2**10)

    def test_bad_tol(self):
        with pytest.raises(ValueError):
            adaptive_fit(np.exp, (0, 1), tol=2.0)

    def test_chop_short_series_unresolved(self):
        assert chop_length(np.ones(10), 1e-15) == 10
