"""Strip-integral continuation: integrals, seam independence, PV route."""

import mpmath as mp
import pytest

from seczeta.adr import ADRParams, Z_adr
from seczeta.hiprec import (
    NonConvergenceError,
    PoleError,
    integrate_finite,
    integrate_semi_infinite,
    matched_significant_digits,
    workdps,
)
from seczeta.mellin import (
    B_coeffs_at_half,
    I_derivs,
    MellinConfig,
    Z_pv,
    Z_strip,
    delta_term,
    zeta_log_deriv,
)


class TestConfig:
    def test_split_point_range(self):
        for bad in (0.5, 1.0, 4.0, 5.0):
            with pytest.raises(ValueError):
                MellinConfig(split_point=bad)

    def test_epsilon_schedule_must_decrease(self):
        with pytest.raises(ValueError):
            MellinConfig(pv_epsilon_schedule=(1e-3, 1e-2))


class TestZetaLogDeriv:
    def test_pole_and_domain(self):
        with pytest.raises(PoleError):
            zeta_log_deriv(mp.mpf(1))
        with pytest.raises(ValueError):
            zeta_log_deriv(mp.mpf(0))

    def test_value_oracle(self):
        with workdps(50):
            got = zeta_log_deriv(mp.mpf(2))
            ref = mp.zeta(2, derivative=1) / mp.zeta(2)
            assert abs(got - ref) < mp.mpf("1e-40")

    def test_large_argument_shortcut_consistent(self):
        with workdps(30):
            x = mp.mpf(300)
            got = zeta_log_deriv(x)
            ref = -(
                mp.log(2) * mp.mpf(2) ** -x
                + mp.log(3) * mp.mpf(3) ** -x
                + mp.log(2) * mp.mpf(4) ** -x
            )
            assert abs(got - ref) <= abs(ref) * mp.mpf("1e-10")


class TestDeltaClosedForms:
    def test_known_values(self, mellin_cfg, ctx50):
        # exact values of the n=0,1,2 moment integrals at s=1/2
        with workdps(60):
            refs = [
                2 * mp.sqrt(2),
                mp.sqrt(2) / 3,
                mp.mpf(23) / (15 * mp.sqrt(2)),
            ]
            for n, ref in enumerate(refs):
                v = delta_term(n, 0, mp.mpf("0.5"), mellin_cfg, ctx50)
                assert abs(v.value - ref) < mp.mpf("1e-40"), n


class TestStrip:
    def test_matches_adr(self, mellin_cfg, stieltjes_store, zeros, ctx30):
        p = ADRParams()
        for s in ("0.25", "0.5", "0.75"):
            a = Z_strip(mp.mpf(s), mellin_cfg, ctx30, store=stieltjes_store)
            b = Z_adr(mp.mpf(s), p, zeros, ctx30)
            with workdps(45):
                assert abs(a.value - b.value) < mp.mpf("1e-20"), s
            assert a.certified_digits >= 20

    def test_split_point_independence(self, stieltjes_store, ctx30):
        vals = {}
        for seam in (1.5, 2.0, 3.0):
            cfg = MellinConfig(split_point=seam)
            vals[seam] = Z_strip(
                mp.mpf("0.5"), cfg, ctx30, store=stieltjes_store
            )
        with workdps(45):
            assert abs(vals[1.5].value - vals[2.0].value) < mp.mpf("1e-25")
            # at seam 3.0 the eta series is near its radius; the result
            # still agrees to that run's (honestly smaller) certificate
            cert = vals[3.0].certified_digits
            assert cert >= 10
            assert abs(vals[3.0].value - vals[2.0].value) < mp.mpf(10) ** (
                -cert
            )

    def test_assembly_matches_direct_quadrature(self, mellin_cfg,
                                                stieltjes_store, ctx30):
        # I^(m) = I1 + I2 equals brute-force quadrature of the raw
        # log-weighted bracket with a hard lower cutoff
        s = mp.mpf("0.5")
        fam = I_derivs(3, s, mellin_cfg, stieltjes_store, ctx30)

        for m in range(4):
            def raw(t, m=m):
                br = zeta_log_deriv(mp.mpf("0.5") + t) + 1 / (t - mp.mpf("0.5"))
                return mp.power(t, -s) * (-mp.log(t)) ** m * br

            # the cutoff excludes ~|bracket(0)| (log 1/δ)^m 2 sqrt(δ) of
            # mass; δ=1e-60 keeps that below the comparison tolerance
            lo = integrate_finite(raw, mp.mpf("1e-60"), 2, ctx30)
            hi = integrate_semi_infinite(raw, 2, ctx30)
            with workdps(45):
                direct = lo.value + hi.value
                assert abs(fam[m].value - direct) < mp.mpf("1e-20") * max(
                    1, abs(direct)
                ), m


class TestPrincipalValue:
    def test_matches_reference(self, mellin_cfg, ctx30, golden_map):
        refs = golden_map("special_values_30d", "Z")
        for key in ("-0.5", "-1.5"):
            _, ref_str = refs[key]
            v = Z_pv(mp.mpf(key), mellin_cfg, ctx30)
            assert matched_significant_digits(v.value, ref_str) >= 30, key

    def test_pole_rejected(self, mellin_cfg, ctx30):
        with pytest.raises(PoleError):
            Z_pv(-1, mellin_cfg, ctx30)


class TestHalfCenterTable:
    def test_rows_match_published(self, mellin_cfg, stieltjes_store, golden):
        from seczeta.hiprec import make_context

        g = golden("coeff_b_half")
        refs = {e.key: e.digits for e in g.entries}
        tbl = B_coeffs_at_half(40, mellin_cfg, stieltjes_store,
                               make_context(45))
        for n in range(11):
            got = matched_significant_digits(tbl.values[n].value, refs[str(n)])
            assert got >= g.threshold, (n, got)
        # accuracy tapers with order, as the published table's own
        # degrading underlines show
        for n in (20, 30):
            got = matched_significant_digits(tbl.values[n].value, refs[str(n)])
            assert got >= 20, (n, got)
        # the published row 40 is itself only ~37 digits accurate; ours
        # reproduces its leading digits
        assert matched_significant_digits(
            tbl.values[40].value, refs["40"]
        ) >= 10

    def test_order_50_refuses_rather_than_degrades(self, mellin_cfg,
                                                   stieltjes_store):
        # the order-50 log-weighted integral family exceeds the
        # quadrature level cap; the engine must hard-stop
        from seczeta.hiprec import make_context

        with pytest.raises(NonConvergenceError):
            B_coeffs_at_half(50, mellin_cfg, stieltjes_store,
                             make_context(45))
