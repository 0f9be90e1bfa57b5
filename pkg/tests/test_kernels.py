"""Kernel evaluation, parameter validation, and coefficient profiles."""

import numpy as np
import pytest

from vpkernels import (
    CoefficientProfile,
    KernelParamError,
    coefficient,
    eval_dirichlet,
    eval_fejer,
    eval_vp,
    eval_vp_fejer_combination,
    integrate_kernel,
    make_params,
    trapezoid_weight,
)
from conftest import random_valid_params


class TestMakeParams:
    def test_classical_pair(self):
        p = make_params(1, 2, 1)
        assert (p.n, p.p) == (1, 1)
        assert p.peak == 3
        assert p.degree == 1

    def test_fejer_boundary_family(self):
        p = make_params(0, 1, 5)
        assert (p.n, p.p) == (0, 5)

    def test_rejects_non_coprime(self):
        with pytest.raises(KernelParamError, match="coprime"):
            make_params(2, 4, 1)

    def test_rejects_negative_r(self):
        with pytest.raises(KernelParamError, match="r must be >= 0"):
            make_params(-1, 2, 1)

    def test_rejects_s_not_above_r(self):
        with pytest.raises(KernelParamError, match="s must exceed r"):
            make_params(2, 2, 1)

    def test_rejects_bad_N(self):
        with pytest.raises(KernelParamError, match="N must be >= 1"):
            make_params(1, 2, 0)

    def test_rejects_non_integer(self):
        with pytest.raises(KernelParamError, match="integer"):
            make_params(1.5, 2, 1)


class TestEvalVp:
    def test_known_values_r1_s2(self):
        p = make_params(1, 2, 1)
        # V(1,2)(x) = 1 + 2 cos(2 pi x)
        assert eval_vp(p, 0.25) == pytest.approx(1.0, abs=1e-12)
        assert eval_vp(p, 1.0 / 3.0) == pytest.approx(0.0, abs=1e-12)
        assert eval_vp(p, 0.0) == 3.0

    def test_matches_cosine_form_on_grid(self):
        p = make_params(1, 2, 1)
        xs = np.linspace(0.0, 1.0, 257)
        expected = 1.0 + 2.0 * np.cos(2.0 * np.pi * xs)
        np.testing.assert_allclose(eval_vp(p, xs), expected, atol=1e-12)

    def test_peak_is_exact(self, rng):
        for _ in range(20):
            p = random_valid_params(rng, 120)
            assert eval_vp(p, 0.0) == float(p.peak)
            assert eval_vp(p, 1.0) == float(p.peak)

    def test_periodicity_and_negative_arguments(self, rng):
        p = make_params(2, 5, 3)
        xs = rng.uniform(0.0, 1.0, 50)
        np.testing.assert_allclose(eval_vp(p, xs + 4.0), eval_vp(p, xs), atol=1e-9)
        np.testing.assert_allclose(eval_vp(p, xs - 2.0), eval_vp(p, xs), atol=1e-9)

    def test_agrees_with_coefficient_series(self, rng):
        # independent route: direct summation of the coefficient series
        for _ in range(5):
            p = random_valid_params(rng, 48)
            xs = rng.uniform(0.0, 1.0, 200)
            series = np.full(xs.shape, 1.0)
            for j in range(1, p.s * p.N):
                series += 2.0 * coefficient(p, j) * np.cos(2.0 * np.pi * j * xs)
            np.testing.assert_allclose(eval_vp(p, xs), series, atol=1e-10)

    def test_product_and_fejer_combination_forms_agree(self, rng):
        for p in (make_params(1, 2, 3), make_params(2, 3, 2), make_params(3, 5, 1)):
            xs = rng.uniform(0.0, 1.0, 1000)
            np.testing.assert_allclose(
                eval_vp(p, xs), eval_vp_fejer_combination(p, xs), atol=1e-10
            )

    def test_symmetry_about_half(self, rng):
        p = make_params(2, 3, 4)
        xs = rng.uniform(0.0, 1.0, 1000)
        np.testing.assert_allclose(eval_vp(p, xs), eval_vp(p, 1.0 - xs), atol=1e-9)

    def test_finite_near_integers(self):
        p = make_params(1, 2, 2)
        xs = np.array([1e-12, 1e-9, 1e-7, 1.0 - 1e-9])
        vals = eval_vp(p, xs)
        assert np.all(np.isfinite(vals))
        np.testing.assert_allclose(vals, float(p.peak), rtol=1e-4)

    def test_normalization(self, rng):
        for p in (make_params(1, 2, 1), make_params(2, 3, 2), make_params(0, 1, 4),
                  make_params(3, 5, 2)):
            assert integrate_kernel(p) == pytest.approx(1.0, abs=1e-9)


class TestFejer:
    def test_value_at_quarter(self):
        # (1/2) (sin(pi/2) / sin(pi/4))^2 = 1
        assert eval_fejer(1, 0.25) == pytest.approx(1.0, abs=1e-12)

    def test_peak(self):
        assert eval_fejer(3, 0.0) == 4.0

    def test_nonnegative_everywhere(self, rng):
        xs = rng.uniform(0.0, 1.0, 5000)
        for n in (0, 1, 5, 12):
            assert np.all(eval_fejer(n, xs) >= 0.0)

    def test_unit_mass(self):
        # Fejer kernel of parameter n is the (0, 1, n+1) family member
        for n in (0, 1, 4, 9):
            assert integrate_kernel(make_params(0, 1, n + 1)) == pytest.approx(1.0, abs=1e-9)
            xs = np.linspace(0.0, 1.0, 7)
            np.testing.assert_allclose(
                eval_fejer(n, xs), eval_vp(make_params(0, 1, n + 1), xs), atol=1e-10
            )


class TestDirichlet:
    def test_peak(self):
        assert eval_dirichlet(1, 0.0) == 3.0

    def test_zero_of_numerator(self):
        assert eval_dirichlet(2, 0.2) == pytest.approx(0.0, abs=1e-12)

    def test_coincides_with_vp_n_nplus1(self, rng):
        for n in (1, 2, 5):
            p = make_params(n, n + 1, 1)
            for x in (0.1, 0.37, 0.5):
                assert eval_dirichlet(n, x) == pytest.approx(eval_vp(p, x), abs=1e-12)
            xs = rng.uniform(0.0, 1.0, 300)
            np.testing.assert_allclose(eval_dirichlet(n, xs), eval_vp(p, xs), atol=1e-12)

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            eval_dirichlet(-1, 0.3)
        with pytest.raises(ValueError):
            eval_fejer(-2, 0.3)


class TestCoefficient:
    def test_flat_top(self):
        assert coefficient(make_params(1, 2, 1), 0) == 1.0
        assert coefficient(make_params(1, 2, 1), 1) == 1.0  # knot value, exact

    def test_ramp_value(self):
        assert coefficient(make_params(1, 2, 2), 3) == 0.5

    def test_support_boundary(self):
        assert coefficient(make_params(1, 2, 1), 2) == 0.0
        assert coefficient(make_params(1, 2, 1), -5) == 0.0

    def test_even(self, rng):
        p = random_valid_params(rng, 60)
        for j in range(0, p.s * p.N + 2):
            assert coefficient(p, j) == coefficient(p, -j)

    def test_trapezoid_weight_matches_scaled_profile(self, rng):
        p = random_valid_params(rng, 40)
        for j in range(-p.s * p.N - 1, p.s * p.N + 2):
            assert trapezoid_weight(p.n, p.p, j) == pytest.approx(coefficient(p, j), abs=1e-15)

    def test_fourier_roundtrip(self, rng):
        # sampled kernel values analyzed back to coefficients
        for _ in range(8):
            p = random_valid_params(rng, 64)
            M = 4 * p.s * p.N
            samples = eval_vp(p, np.arange(M) / M)
            hat = np.fft.fft(samples) / M
            for j in range(-(p.s * p.N - 1), p.s * p.N):
                assert hat[j % M].real == pytest.approx(coefficient(p, j), abs=1e-8)
                assert abs(hat[j % M].imag) < 1e-8


class TestCoefficientProfile:
    def test_samples_table(self):
        profile = CoefficientProfile(make_params(1, 2, 2))
        table = dict(profile.samples())
        assert table[0] == 1.0 and table[2] == 1.0
        assert table[3] == 0.5 and table[-3] == 0.5
        assert table[4] == 0.0
        assert profile.support == 3

    def test_trapezoid_nodes(self):
        assert CoefficientProfile(make_params(1, 2, 1)).trapezoid_nodes() == [
            (-2, 0.0),
            (-1, 1.0),
            (1, 1.0),
            (2, 0.0),
        ]
        # Fejer family degenerates to a triangle
        assert CoefficientProfile(make_params(0, 1, 3)).trapezoid_nodes() == [
            (-3, 0.0),
            (0, 1.0),
            (3, 0.0),
        ]
