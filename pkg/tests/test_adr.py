"""Accelerated analytic continuation: reference grid, continuity, tuning."""

import mpmath as mp
import pytest

from seczeta.adr import (
    ADRParams,
    Z_adr,
    Z_adr_derivs,
    adr_params_for,
    calibrate,
    default_zeros_database,
    load_zeros,
)
from seczeta.hiprec import (
    PoleError,
    make_context,
    matched_significant_digits,
    significant_digit_count,
    workdps,
)
from seczeta.series import Z_derivs_from_zeros
from seczeta.voros import Z_even

RATIONAL_KEYS = {"-6", "-4", "-2", "0"}


class TestReferenceGrid:
    def test_defaults_match_published_30_digits(self, zeros, ctx30, golden):
        p = ADRParams()
        for e in golden("special_values_30d").entries:
            if e.key in RATIONAL_KEYS:
                continue
            v = Z_adr(mp.mpf(e.key), p, zeros, ctx30)
            want = significant_digit_count(e.digits)
            got = matched_significant_digits(v.value, e.digits)
            assert got >= want, (e.key, got, want)

    def test_default_params_values(self):
        p = ADRParams()
        assert (p.a, p.N, p.zero_count) == (0.015, 100, 40)


class TestPolesAndDispatch:
    def test_double_pole(self, zeros, ctx30):
        with pytest.raises(PoleError):
            Z_adr(1, ADRParams(), zeros, ctx30)

    def test_negative_odd_poles(self, zeros, ctx30):
        for s in (-1, -3, -5):
            with pytest.raises(PoleError):
                Z_adr(s, ADRParams(), zeros, ctx30)

    def test_dispatch_points_rejected(self, zeros, ctx30):
        for s in (0, -2, -4):
            with pytest.raises(PoleError):
                Z_adr(s, ADRParams(), zeros, ctx30)

    def test_continuity_across_dispatch(self, zeros, ctx30):
        # Z is regular at 0 and -2; the evaluator approaches the exact
        # rationals as s does
        p = ADRParams()
        eps = mp.mpf("1e-8")
        with workdps(40):
            near0 = Z_adr(eps, p, zeros, ctx30).value
            assert abs(near0 - mp.mpf(7) / 8) < mp.mpf("1e-6")
            near2 = Z_adr(-2 + eps, p, zeros, ctx30).value
            assert abs(near2 + mp.mpf(9) / 32) < mp.mpf("1e-6")


class TestCrossAgreement:
    def test_matches_closed_form_evens(self, zeros):
        ctx = make_context(60)
        p = adr_params_for(75, zeros)
        for m in range(1, 11):
            a = Z_adr(2 * m, p, zeros, ctx)
            b = Z_even(m, ctx)
            with workdps(80):
                rel = abs(a.value - b.value) / abs(b.value)
                assert rel < mp.mpf("1e-50"), (m, rel)
            assert a.certified_digits >= 50

    def test_truncation_monotonicity(self, zeros, ctx30):
        base = Z_adr(1.5, ADRParams(), zeros, ctx30)
        for kw in (
            {"zero_count": 60},
            {"N": 130},
            {"mangoldt_limit": 200},
            {"e_terms": 400},
        ):
            alt = Z_adr(1.5, ADRParams(**kw), zeros, ctx30)
            with workdps(40):
                assert abs(alt.value - base.value) < mp.mpf("1e-28")


class TestDerivatives:
    def test_table_match(self, zeros, ctx30, golden):
        g = golden("coeff_zderiv_center2")
        vals = Z_adr_derivs(2, 10, ADRParams(), zeros, ctx30)
        refs = {e.key: e.digits for e in g.entries}
        for n in range(11):
            got = matched_significant_digits(vals[n].value, refs[str(n)])
            assert got >= g.threshold, (n, got)

    def test_taylor_reconstruction(self, zeros, ctx30):
        # 30-term Taylor series about 2: the omitted tail itself caps
        # accuracy at ~|Z^(31)| 0.3^31/31! (~1e-14 relative at s=2.3)
        p = ADRParams()
        vals = Z_adr_derivs(2, 30, p, zeros, ctx30)
        with workdps(80):
            for s_text, want in (("2.3", 13), ("2.1", 20)):
                s = mp.mpf(s_text)
                rec = mp.fsum(
                    vals[n].value * (s - 2) ** n / mp.factorial(n)
                    for n in range(31)
                )
                ref = Z_adr(s, p, zeros, ctx30).value
                rel = abs(rec - ref) / abs(ref)
                assert rel < mp.mpf(10) ** (-want), (s_text, rel)


class TestZerosRoute:
    def test_zero_sum_derivatives_degrade(self, zeros, ctx30):
        # with a desk-scale zeros database the direct zero-sum route is
        # only roughly right, and degrades with derivative order
        tbl = Z_derivs_from_zeros(2, 2, zeros)
        assert tbl.provenance == "zeros"
        ref = Z_even(1, make_context(30))
        with workdps(40):
            rel = abs(tbl.values[0].value - ref.value) / abs(ref.value)
            assert rel < mp.mpf("0.2")
            assert rel > mp.mpf("1e-12")


class TestDatabaseAndTuning:
    def test_database_shape(self, zeros):
        assert zeros.min_certified_digits >= 300
        with workdps(40):
            assert abs(
                zeros.ordinate(1).value - mp.mpf("14.134725141734693790457")
            ) < mp.mpf("1e-20")
        assert len(zeros.ordinates(200)) == 200

    def test_load_zeros_min_digits(self):
        from seczeta.dataio import data_path

        with pytest.raises(ValueError):
            load_zeros(data_path("zeros_300d.txt"), 500)

    def test_params_for_infeasible(self, zeros):
        from seczeta.hiprec import InsufficientPrecisionError

        with pytest.raises(InsufficientPrecisionError):
            adr_params_for(2000, zeros)

    def test_calibrate_picks_scored_candidate(self, zeros, ctx30):
        got = calibrate(
            1.5,
            [(0.015, 100), (0.5, 10)],
            zeros,
            ctx30,
        )
        assert (got.a, got.N) == (0.015, 100)
