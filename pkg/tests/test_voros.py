"""Closed-form even values, exact rationals, and the primes-only route."""

from fractions import Fraction

import mpmath as mp
import pytest

from seczeta.hiprec import (
    matched_significant_digits,
    significant_digit_count,
    workdps,
)
from seczeta.voros import (
    Z_at_zero,
    Z_even,
    Z_even_via_primes,
    Z_neg_even,
    Z_prime_at_zero,
    logzeta_shift_bracket,
)


class TestExactValues:
    def test_z_at_zero(self):
        assert Z_at_zero() == Fraction(7, 8)

    def test_neg_even_rationals(self):
        expected = {
            1: Fraction(-9, 32),
            2: Fraction(3, 128),
            3: Fraction(-69, 512),
            4: Fraction(-1377, 2048),
            5: Fraction(-50529, 8192),
        }
        for m, frac in expected.items():
            assert Z_neg_even(m) == frac

    def test_neg_even_matches_reference_decimals(self, golden_map):
        refs = golden_map("special_values_30d", "Z")
        for m, key in ((1, "-2"), (2, "-4"), (3, "-6")):
            frac = Z_neg_even(m)
            with workdps(40):
                ref, _ = refs[key]
                val = mp.mpf(frac.numerator) / frac.denominator
                assert abs(val - ref) < mp.mpf("1e-30")

    def test_z_prime_at_zero_closed_form(self, ctx50, golden_map):
        refs = golden_map("coeff_zderiv_center0", "Zderiv")
        _, ref_str = refs["1"]
        v = Z_prime_at_zero(ctx50)
        assert matched_significant_digits(v.value, ref_str) >= 49


class TestEvenClosedForm:
    def test_matches_reference_30_digits(self, ctx120, golden_map):
        refs = golden_map("special_values_30d", "Z")
        for m in range(1, 6):
            _, ref_str = refs[str(2 * m)]
            v = Z_even(m, ctx120)
            want = significant_digit_count(ref_str)
            assert matched_significant_digits(v.value, ref_str) >= want

    def test_route_equivalence(self, ctx50):
        # the (zeta, beta) assembly equals the Hurwitz assembly exactly
        for m in range(1, 11):
            a = Z_even(m, ctx50, route="hurwitz")
            b = Z_even(m, ctx50, route="zeta_beta")
            with workdps(70):
                rel = abs(a.value - b.value) / abs(a.value)
                assert rel < mp.mpf("1e-48")

    def test_unknown_route(self, ctx50):
        with pytest.raises(ValueError):
            Z_even(1, ctx50, route="nope")

    def test_m_validation(self, ctx50):
        with pytest.raises(ValueError):
            Z_even(0, ctx50)

    def test_shift_bracket_consistency(self, ctx50):
        # the center-2 transported bracket equals the directly computed
        # one: 2^(2m) - [log zeta]^(2m)(1/2)/(2m-1)! recovered from Z(2m)
        for m in (1, 2, 3):
            b = logzeta_shift_bracket(m, 200, ctx50)
            with workdps(70):
                z = Z_even(m, ctx50).value
                sign = -1 if m % 2 else 1
                hz = mp.zeta(2 * m, mp.mpf(5) / 4)
                # invert Z = sign*(bracket - hz/4^m)/2
                direct = 2 * z * sign + hz / mp.mpf(4) ** m
                assert abs(b.value - direct) < mp.mpf("1e-44") * max(
                    1, abs(direct)
                )


class TestPrimesRoute:
    def test_diagnostics_shape(self, ctx30):
        v, diag = Z_even_via_primes(1, 4, 10, 10**4, ctx30)
        assert {"dominant", "estimates", "certified_estimate"} <= set(diag)
        assert {"k_sum", "j_sum", "prime_fluctuation"} <= set(diag["estimates"])
        assert v.certified_digits >= 0

    def test_raw_vs_corrected(self, ctx30):
        # without the density correction the high-order prime sums are
        # missing most of their mass and the result is much worse
        ref = Z_even(1, ctx30)
        good, _ = Z_even_via_primes(1, 6, 20, 10**5, ctx30,
                                    tail_correction=True)
        raw, rdiag = Z_even_via_primes(1, 6, 20, 10**5, ctx30,
                                       tail_correction=False)
        with workdps(40):
            e_good = abs(good.value - ref.value)
            e_raw = abs(raw.value - ref.value)
            assert e_good < e_raw
        assert "prime_cutoff" in rdiag["estimates"]

    def test_parameter_validation(self, ctx30):
        with pytest.raises(ValueError):
            Z_even_via_primes(0, 4, 10, 100, ctx30)
        with pytest.raises(ValueError):
            Z_even_via_primes(1, 500, 10, 100, ctx30)
        with pytest.raises(ValueError):
            Z_even_via_primes(1, 4, 10, 1, ctx30)
