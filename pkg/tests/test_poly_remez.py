import numpy as np
import pytest

from halphen._alternation import sup_scan
from halphen.poly_remez import RemezConvergenceError, newman_rivlin, remez_poly
from halphen.targets import Power


def brute_force_linear_minimax(f, grid, lo=-1.0, hi=1.0, levels=5, m=201):
    """min over (a, b) of max |f - a - b x| by nested dense grid search."""
    F = f(grid)
    a_lo, a_hi, b_lo, b_hi = lo, hi, lo, hi
    for _ in range(levels):
        A = np.linspace(a_lo, a_hi, m)
        B = np.linspace(b_lo, b_hi, m)
        errs = np.max(np.abs(F[None, None, :] - A[:, None, None]
                             - B[None, :, None] * grid[None, None, :]), axis=2)
        i, j = np.unravel_index(np.argmin(errs), errs.shape)
        da, db = (a_hi - a_lo) / (m - 1), (b_hi - b_lo) / (m - 1)
        a_lo, a_hi = A[i] - 2 * da, A[i] + 2 * da
        b_lo, b_hi = B[j] - 2 * db, B[j] + 2 * db
    return errs[i, j], A[i], B[j]


class TestExamples:
    @pytest.mark.parametrize("n", [1, 7, 250])
    def test_constant_is_half(self, n):
        res = remez_poly(Power(n), 0)
        assert res.error == pytest.approx(0.5, abs=1e-14)
        assert res.approximant(0.3) == pytest.approx(0.5, abs=1e-14)

    def test_square_linear(self):
        res = remez_poly(Power(2), 1)
        assert abs(res.error - 0.125) <= 1e-12
        x = np.linspace(0, 1, 11)
        np.testing.assert_allclose(res.approximant(x), x - 0.125, atol=1e-12)

    def test_square_linear_against_brute_force(self):
        grid = np.linspace(0, 1, 2001)
        err, a, b = brute_force_linear_minimax(Power(2), grid)
        res = remez_poly(Power(2), 1)
        assert res.error == pytest.approx(err, abs=1e-6)
        assert (a, b) == pytest.approx((-0.125, 1.0), abs=1e-5)

    def test_x250_k35_against_model(self):
        res = remez_poly(Power(250), 35)
        model = newman_rivlin(35, 250)
        assert model / 3 <= res.error <= 3 * model


class TestCertificate:
    @pytest.mark.parametrize("n, k", [(2, 1), (30, 5), (250, 20), (1000, 60)])
    def test_alternation_and_scan(self, n, k):
        res = remez_poly(Power(n), k)
        cert = res.certificate
        assert len(cert) == k + 2
        assert cert.is_valid(1e-3, (0, 1))
        assert res.error == pytest.approx(cert.levelled_error, rel=1e-3)
        scan = sup_scan(lambda x: Power(n)(x) - res.approximant(x), 0.0, 1.0, 2048)
        assert scan <= res.error * (1 + 1e-3)
        assert scan >= res.error * (1 - 1e-3)

    def test_refinement_grid_never_exceeds_error(self):
        k = 12
        res = remez_poly(Power(100), k)
        pts = np.sort(np.concatenate([np.linspace(0, 1, 10 * (k + 1)),
                                      res.certificate.points.astype(float)]))
        err = np.max(np.abs(Power(100)(pts) - res.approximant(pts)))
        assert err <= res.error * (1 + 10 * 1e-3)


class TestProperties:
    def test_monotone_in_degree(self):
        errs = [remez_poly(Power(250), k).error for k in range(41)]
        assert all(b <= a * (1 + 1e-12) for a, b in zip(errs, errs[1:]))

    @pytest.mark.parametrize("n", [0, 1, 3, 6])
    def test_zero_case(self, n):
        res = remez_poly(Power(n), 6)
        assert res.error <= 1e-14
        assert res.certificate.degenerate

    @pytest.mark.parametrize("n", [250, 1000])
    def test_log_error_linear_in_k_squared(self, n):
        ks, errs = [], []
        for k in range(0, 200):
            model = newman_rivlin(k, n)
            if model < 1e-10:
                break
            if model <= 1e-1:
                ks.append(k)
                errs.append(remez_poly(Power(n), k).error)
        x, y = np.square(ks), np.log(errs)
        slope, icpt = np.polyfit(x, y, 1)
        resid = y - (slope * x + icpt)
        r2 = 1 - np.sum(resid**2) / np.sum((y - y.mean()) ** 2)
        assert r2 >= 0.99


class TestDiscreteAndErrors:
    def test_discrete_points(self):
        x = np.linspace(0, 1, 50)
        res = remez_poly(x**3, 2, points=x)
        cont = remez_poly(Power(3), 2).error
        assert res.error <= cont + 1e-14
        assert res.error == pytest.approx(cont, rel=1e-2)

    def test_negative_degree(self):
        with pytest.raises(ValueError):
            remez_poly(Power(2), -1)

    def test_non_convergence_carries_best(self):
        with pytest.raises(RemezConvergenceError) as info:
            remez_poly(Power(500), 30, max_iter=1, tol=1e-15)
        assert info.value.best is not None
        assert info.value.defect > 0

    def test_extended_precision_matches(self):
        from halphen.precision import working_precision
        with working_precision(128):
            res = remez_poly(Power(2), 1)
            assert abs(res.error - 0.125) < 1e-30
