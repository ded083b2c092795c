"""Differentiation/quadrature engine oracles and digit-string helpers."""

import mpmath as mp
import pytest

from seczeta.hiprec import (
    NonConvergenceError,
    derivative_grid,
    derivative_num,
    digit_string,
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite,
    integrate_semi_infinite_batch,
    make_context,
    matched_fractional_digits,
    matched_significant_digits,
    mpf_from_digits,
    significant_digit_count,
    workdps,
)


class TestDigitHelpers:
    def test_mpf_from_digits_plain(self):
        assert mpf_from_digits("0.875") == mp.mpf("0.875")

    def test_mpf_from_digits_scientific(self):
        with workdps(40):
            v = mpf_from_digits("-6.0687262197471062787×10^6")
            assert abs(v + mp.mpf("6068726.2197471062787")) < mp.mpf("1e-10")

    def test_significant_digit_count(self):
        assert significant_digit_count("0.000729548272709704215875518569") == 27
        assert significant_digit_count("14.134725141734693790457251983562") == 32

    def test_matched_significant_digits(self):
        ref = "0.023104993115418970788933810430"
        x = mpf_from_digits("0.023104993115418999")
        assert matched_significant_digits(x, ref) == 15

    def test_matched_fractional_digits(self):
        ref = "14.134725141734693790457251983562"
        x = mpf_from_digits("14.134725141055464")
        assert matched_fractional_digits(x, ref) == 9

    def test_matched_fractional_integer_mismatch(self):
        assert matched_fractional_digits(mp.mpf(2), "14.13") == 0

    def test_digit_string_fixed_point(self):
        assert digit_string(mp.mpf("0.875"), 5).startswith("0.875")

    def test_digit_string_scientific_for_tiny(self):
        s = digit_string(mp.mpf("1e-20"), 5)
        assert "e" in s


class TestDifferentiation:
    def test_polynomial_exact(self, ctx50):
        # f = x^5: f'''(2) = 60 * 2^2 = 240
        v = derivative_num(lambda x: x**5, 2, 3, ctx50)
        with workdps(60):
            assert abs(v.value - 240) < mp.mpf("1e-45")

    def test_order_above_degree_is_zero(self, ctx50):
        v = derivative_num(lambda x: x**2 + 3 * x, 1, 5, ctx50)
        with workdps(60):
            assert abs(v.value) < mp.mpf("1e-40")

    def test_grid_matches_exp(self, ctx50):
        vals = derivative_grid(mp.exp, 1, 6, ctx50)
        with workdps(60):
            e = mp.e
            for v in vals:
                assert abs(v.value - e) < mp.mpf("1e-44")

    def test_exclude_center(self, ctx50):
        # sin(x)/x has a removable singularity at 0; derivatives exist
        def f(x):
            return mp.sin(x) / x

        vals = derivative_grid(f, 0, 2, ctx50, exclude_center=True)
        with workdps(60):
            assert abs(vals[0].value - 1) < mp.mpf("1e-40")
            assert abs(vals[2].value + mp.mpf(1) / 3) < mp.mpf("1e-38")


class TestQuadrature:
    def test_finite_oracle(self, ctx50):
        v = integrate_finite(mp.sin, 0, mp.pi, ctx50)
        with workdps(60):
            assert abs(v.value - 2) < mp.mpf("1e-48")
        assert v.certified_digits >= 45

    def test_endpoint_singularity(self, ctx50):
        # integral of t^(-1/2) over (0,1) = 2
        v = integrate_finite(lambda t: 1 / mp.sqrt(t), 0, 1, ctx50)
        with workdps(60):
            assert abs(v.value - 2) < mp.mpf("1e-45")

    def test_semi_infinite_oracle(self, ctx50):
        v = integrate_semi_infinite(lambda t: mp.exp(-t), 1, ctx50)
        with workdps(60):
            assert abs(v.value - mp.exp(-1)) < mp.mpf("1e-47")

    def test_batch_matches_scalar(self, ctx50):
        def fam(t):
            return [mp.exp(-t), t * mp.exp(-t)]

        b = integrate_semi_infinite_batch(fam, 0, 2, ctx50)
        with workdps(60):
            assert abs(b[0].value - 1) < mp.mpf("1e-45")
            assert abs(b[1].value - 1) < mp.mpf("1e-45")

    def test_finite_batch(self, ctx50):
        def fam(t):
            return [t, t * t]

        b = integrate_finite_batch(fam, 0, 1, 2, ctx50)
        with workdps(60):
            assert abs(b[0].value - mp.mpf("0.5")) < mp.mpf("1e-45")
            assert abs(b[1].value - mp.mpf(1) / 3) < mp.mpf("1e-45")

    def test_nonconvergent_raises(self, ctx50):
        with pytest.raises((NonConvergenceError, ArithmeticError)):
            integrate_semi_infinite(lambda t: mp.mpf(1), 0, ctx50)


def test_context_validation():
    with pytest.raises(ValueError):
        make_context(10)
