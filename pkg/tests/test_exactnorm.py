"""Zero census, sign sequences, antiderivative, and the two exact norm engines."""

import math
from fractions import Fraction

import numpy as np
import pytest

from vpkernels import (
    Antiderivative,
    area_split,
    decay_bound_check,
    derivative_sign_at_zero,
    enumerate_zeros,
    eval_vp,
    make_params,
    norm_closed_form,
    norm_piecewise_exact,
    norm_quadrature,
    sign_of_sin_two_pi,
    sign_sequences,
    trapezoid_weight,
)
from vpkernels.verify import coprime_pairs
from conftest import L1_CONSTANT, L2_CONSTANT, random_valid_params


def predicted_double_locations(r, s, N):
    """Coincidence locations: n/N always; odd multiples of 1/(2N) if r, s both odd."""
    if r % 2 == 1 and s % 2 == 1:
        return {Fraction(t, 2 * N) for t in range(1, 2 * N)}
    return {Fraction(n, N) for n in range(1, N)}


class TestZeroEnumeration:
    def test_classical_pair_N2(self):
        zs = enumerate_zeros(make_params(1, 2, 2))
        assert zs.total_multiplicity == 6
        locs = {e.location: e for e in zs.entries}
        assert set(locs) == {Fraction(j, 6) for j in (1, 2, 3, 4, 5)}
        half = locs[Fraction(1, 2)]
        assert half.kind == "coincident"
        assert half.multiplicity == 2
        assert (half.a, half.b) == (3, 1)
        for j in (1, 2, 4, 5):
            assert locs[Fraction(j, 6)].multiplicity == 1

    def test_classical_pair_N1(self):
        zs = enumerate_zeros(make_params(1, 2, 1))
        assert [e.location for e in zs.entries] == [Fraction(1, 3), Fraction(2, 3)]
        assert all(e.multiplicity == 1 for e in zs.entries)

    def test_both_odd_gives_half_integer_double(self):
        zs = enumerate_zeros(make_params(1, 3, 1))
        doubles = zs.double_zeros()
        assert [e.location for e in doubles] == [Fraction(1, 2)]
        assert zs.total_multiplicity == 4

    def test_constant_kernel_has_no_zeros(self):
        zs = enumerate_zeros(make_params(0, 1, 1))
        assert zs.entries == ()
        assert zs.total_multiplicity == 0

    def test_census_random(self, rng):
        for _ in range(25):
            p = random_valid_params(rng, 200)
            zs = enumerate_zeros(p)
            assert zs.total_multiplicity == 2 * p.s * p.N - 2
            locs = [e.location for e in zs.entries]
            assert locs == sorted(locs)
            assert len(set(locs)) == len(locs)
            doubles = {e.location for e in zs.double_zeros()}
            assert doubles == predicted_double_locations(p.r, p.s, p.N)

    def test_zero_locations_are_zeros(self, rng):
        for _ in range(5):
            p = random_valid_params(rng, 60)
            for e in enumerate_zeros(p).entries:
                assert abs(eval_vp(p, float(e.location))) < 1e-7 * p.peak


class TestSignOfSin:
    def test_against_float_sin(self, rng):
        for _ in range(500):
            num = int(rng.integers(-50, 51))
            den = int(rng.integers(1, 40))
            exact = sign_of_sin_two_pi(num, den)
            approx = math.sin(2.0 * math.pi * num / den)
            if abs(approx) > 1e-9:
                assert exact == (1 if approx > 0 else -1)
            else:
                assert exact == 0


class TestSignSequences:
    def test_classical_pair_goldens(self):
        ss = sign_sequences(1, 2)
        assert ss.eps == (1, -1, 0)
        assert ss.delta == (0,)
        inv_sqrt3 = 1.0 / math.sqrt(3.0)
        assert ss.eps_hat[0] == pytest.approx(-1j * inv_sqrt3, abs=1e-12)
        assert ss.eps_hat[1] == pytest.approx(1j * inv_sqrt3, abs=1e-12)
        assert ss.eps_hat[2] == pytest.approx(0.0, abs=1e-12)
        assert ss.delta_hat[0] == pytest.approx(0.0, abs=1e-12)

    def test_dft_inversion_reconstructs_signs(self):
        for r, s in coprime_pairs(12):
            ss = sign_sequences(r, s)
            for seq, hats, q in ((ss.eps, ss.eps_hat, s + r), (ss.delta, ss.delta_hat, s - r)):
                for a in range(1, q + 1):
                    rec = sum(
                        hats[k - 1] * np.exp(2j * np.pi * a * k / q) for k in range(1, q + 1)
                    )
                    assert rec.real == pytest.approx(seq[a - 1], abs=1e-12)
                    assert abs(rec.imag) < 1e-12

    def test_balance_is_zero(self):
        for r, s in coprime_pairs(12):
            assert sign_sequences(r, s).balance == 0

    def test_periodic_extension(self):
        ss = sign_sequences(2, 5)
        for a in range(1, 30):
            assert ss.eps_at(a + 7) == ss.eps_at(a)
        for b in range(1, 30):
            assert ss.delta_at(b + 3) == ss.delta_at(b)

    def test_final_period_entries_vanish(self):
        # the norm sums may safely run through a = (s+r)N, b = (s-r)N
        for r, s in coprime_pairs(9):
            ss = sign_sequences(r, s)
            assert ss.eps_at(s + r) == 0
            assert ss.delta_at(s - r) == 0


class TestDerivativeSign:
    def test_classical_pair(self):
        p = make_params(1, 2, 1)
        assert derivative_sign_at_zero(p, Fraction(1, 3)) == -1
        assert derivative_sign_at_zero(p, Fraction(2, 3)) == 1

    def test_double_zero_sign_is_zero(self):
        p = make_params(1, 2, 2)
        assert derivative_sign_at_zero(p, Fraction(1, 2)) == 0

    def test_rejects_non_zero_location(self):
        p = make_params(1, 2, 1)
        with pytest.raises(ValueError, match="not a zero"):
            derivative_sign_at_zero(p, Fraction(1, 7))
        with pytest.raises(ValueError, match="interior"):
            derivative_sign_at_zero(p, Fraction(3, 2))

    def test_matches_finite_difference_slope(self):
        for r, s in [(1, 2), (2, 3), (1, 4), (3, 5), (2, 7)]:
            for N in (1, 2, 3):
                p = make_params(r, s, N)
                h = 1e-7 / N
                for e in enumerate_zeros(p).entries:
                    sign = derivative_sign_at_zero(p, e)
                    x = float(e.location)
                    slope = (eval_vp(p, x + h) - eval_vp(p, x - h)) / (2.0 * h)
                    if e.multiplicity == 1:
                        assert sign != 0
                        assert math.copysign(1, slope) == sign
                    else:
                        # at a double zero the centered difference is tiny
                        assert sign == 0
                        assert abs(slope) < 1e-3 * p.peak / float(e.location)


class TestAntiderivative:
    def test_increment_over_period_is_one(self, rng):
        for _ in range(5):
            p = random_valid_params(rng, 80)
            W = Antiderivative(p)
            assert W.eval(1.0) - W.eval(0.0) == pytest.approx(1.0, abs=1e-12)

    def test_derivative_matches_kernel(self, rng):
        p = make_params(2, 3, 3)
        W = Antiderivative(p)
        h = 1e-6
        for x in rng.uniform(0.01, 0.99, 100):
            fd = (W.eval(x + h) - W.eval(x - h)) / (2.0 * h)
            assert fd == pytest.approx(eval_vp(p, x), abs=1e-4)

    def test_classical_closed_form(self):
        # for (1, 2, 1): W(x) = x + sin(2 pi x) / pi
        W = Antiderivative(make_params(1, 2, 1))
        for x in (0.1, 0.25, 0.8):
            assert W.eval(x) == pytest.approx(x + math.sin(2 * math.pi * x) / math.pi, abs=1e-14)


class TestNormPiecewiseExact:
    def test_classical_value_every_N(self):
        for N in (1, 2, 3, 4):
            rep = norm_piecewise_exact(make_params(1, 2, N))
            assert rep.value == pytest.approx(L1_CONSTANT, abs=1e-12)
            assert rep.method == "piecewise-exact"

    def test_fejer_family_is_one(self):
        for N in (1, 2, 5):
            assert norm_piecewise_exact(make_params(0, 1, N)).value == 1.0

    def test_dirichlet_value(self):
        assert norm_piecewise_exact(make_params(2, 3, 1)).value == pytest.approx(
            L2_CONSTANT, abs=1e-12
        )

    def test_value_within_bounds(self, rng):
        for _ in range(10):
            p = random_valid_params(rng, 80)
            rep = norm_piecewise_exact(p)
            lo, hi = rep.bounds
            assert lo - 1e-12 <= rep.value <= hi + 1e-12


class TestNormClosedForm:
    def test_classical_value(self):
        rep = norm_closed_form(1, 2)
        assert rep.value == pytest.approx(L1_CONSTANT, abs=1e-12)
        assert rep.method == "closed-form"
        assert rep.imag_residual is not None and rep.imag_residual < 1e-10

    def test_matches_lebesgue_constants(self):
        from vpkernels import lebesgue_constant

        for n in range(1, 6):
            assert norm_closed_form(n, n + 1).value == pytest.approx(
                lebesgue_constant(n), abs=1e-9
            )

    def test_matches_piecewise_at_N1(self):
        for r, s in [(1, 3), (2, 5), (3, 5)]:
            closed = norm_closed_form(r, s).value
            piecewise = norm_piecewise_exact(make_params(r, s, 1)).value
            assert closed == pytest.approx(piecewise, abs=1e-10)

    def test_wide_ramp_pairs_need_full_m_range(self):
        # regression: the (s - r) DFT sum has nonzero terms beyond m in {0, 1}
        frozen = {
            (2, 5): 1.3297274257428424,
            (4, 7): 1.5144195340638682,
            (3, 7): 1.357297101945856,
            (5, 8): 1.5827481171509992,
        }
        for (r, s), expected in frozen.items():
            assert norm_closed_form(r, s).value == pytest.approx(expected, abs=1e-12)
            assert norm_piecewise_exact(make_params(r, s, 1)).value == pytest.approx(
                expected, abs=1e-10
            )

    def test_validates_pair(self):
        from vpkernels import KernelParamError

        with pytest.raises(KernelParamError):
            norm_closed_form(2, 4)

    def test_linear_term_collapse(self):
        # the full-range linear contribution equals its N-free form
        for r, s in coprime_pairs(7):
            ss = sign_sequences(r, s)
            nfree = 2.0 / (s + r) * sum(ss.eps[a - 1] * a for a in range(1, s + r + 1))
            nfree += 2.0 / (s - r) * sum(ss.delta[b - 1] * b for b in range(1, s - r + 1))
            for N in range(1, 9):
                q1, q2 = (s + r) * N, (s - r) * N
                full = 2.0 * sum(ss.eps_at(a) * a / q1 for a in range(1, q1 + 1))
                full += 2.0 * sum(ss.delta_at(b) * b / q2 for b in range(1, q2 + 1))
                assert full == pytest.approx(nfree, abs=1e-10)

    def test_narrow_side_support_restriction(self):
        # on the (s + r) side only m in {0, 1} can contribute
        for r, s in coprime_pairs(12):
            q = s + r
            for k in range(1, q + 1):
                for m in range(-6, 8):
                    if m in (0, 1):
                        continue
                    assert trapezoid_weight(r, s - r, -k + m * q) == 0.0


class TestTheoremConstancy:
    def test_norm_independent_of_N(self):
        for r, s in coprime_pairs(5):
            closed = norm_closed_form(r, s).value
            for N in range(1, 7):
                piecewise = norm_piecewise_exact(make_params(r, s, N)).value
                assert piecewise == pytest.approx(closed, abs=1e-9)

    def test_piecewise_matches_quadrature(self, rng):
        for _ in range(6):
            p = random_valid_params(rng, 40, max_s=7)
            assert norm_piecewise_exact(p).value == pytest.approx(
                norm_quadrature(p).value, abs=1e-7
            )


class TestAreaSplit:
    def test_classical_split(self):
        plus, minus = area_split(make_params(1, 2, 1))
        assert plus == pytest.approx(0.5 * (1.0 + L1_CONSTANT), abs=1e-12)
        assert plus - minus == pytest.approx(1.0, abs=1e-12)

    def test_nonnegative_kernel(self):
        assert area_split(make_params(0, 1, 3)) == (1.0, 0.0)

    def test_difference_is_exactly_one(self):
        plus, minus = area_split(make_params(2, 3, 2))
        assert plus - minus == pytest.approx(1.0, abs=1e-14)


class TestDecayBound:
    def test_bound_holds_large_N(self):
        rep = decay_bound_check(make_params(1, 2, 1000), grid_points=10_000)
        assert rep.satisfied and rep.ratio <= 1.0

    def test_degenerate_window_at_N8(self):
        rep = decay_bound_check(make_params(2, 3, 8), grid_points=100)
        assert rep.window == (0.5, 0.5)
        assert rep.satisfied

    def test_fejer_family(self):
        rep = decay_bound_check(make_params(0, 1, 16), grid_points=5000)
        assert rep.satisfied

    def test_rejects_small_N(self):
        with pytest.raises(ValueError, match="N >= 8"):
            decay_bound_check(make_params(1, 2, 7))
