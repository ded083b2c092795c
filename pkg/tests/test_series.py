"""Coefficient tables, Taylor reconstructions, and the pole expansion."""

import mpmath as mp
import pytest

from seczeta.hiprec import (
    NonConvergenceError,
    PoleError,
    RealValue,
    make_context,
    matched_fractional_digits,
    mpf_from_digits,
    workdps,
)
from seczeta.series import (
    A_coeffs,
    B_coeffs,
    CoefficientTable,
    H_partial_from_zeros,
    Z_from_A,
    Z_from_B,
    harmonic_H,
)


class TestTableValidation:
    def _rv(self, x):
        return RealValue(mp.mpf(x), certified_digits=30)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            CoefficientTable("X", 2, 1, [self._rv(1)])

    def test_count_mismatch(self):
        with pytest.raises(ValueError):
            CoefficientTable("A", 2, 3, [self._rv(1)])

    def test_c_center_must_be_pole(self):
        with pytest.raises(ValueError):
            CoefficientTable("C", 2, 1, [self._rv(1)])

    def test_unknown_provenance(self):
        with pytest.raises(ValueError):
            CoefficientTable("A", 2, 1, [self._rv(1)], provenance="guess")


class TestLeibnizRoutes:
    def test_a_from_zderiv_matches_a_from_b(self, zeros, ctx30, a2_table):
        # two independent routes to A^(n)(2): the (s-1)^2 Leibniz rule on
        # a Zderiv stencil, and inverse-Leibniz from the entire product
        from seczeta.adr import ADRParams, Z_adr_derivs

        zd_vals = Z_adr_derivs(2, 6, ADRParams(), zeros, ctx30)
        zd = CoefficientTable(
            kind="Zderiv", center=2, count=7, values=zd_vals
        )
        a = A_coeffs(2, 6, zd)
        with workdps(50):
            for n in range(7):
                diff = abs(a.values[n].value - a2_table.values[n].value)
                assert diff < mp.mpf("1e-25") * max(
                    1, abs(a2_table.values[n].value)
                )

    def test_b_from_a_table_route(self, a2_table, b2_table, ctx30):
        b = B_coeffs(2, 6, CoefficientTable(
            kind="A", center=2, count=11, values=a2_table.values[:11]
        ), ctx30)
        with workdps(50):
            for n in range(7):
                diff = abs(b.values[n].value - b2_table.values[n].value)
                assert diff < mp.mpf("1e-25") * max(
                    1, abs(b2_table.values[n].value)
                )

    def test_b_requires_matching_center(self, a2_table, ctx30):
        with pytest.raises(ValueError):
            B_coeffs(3, 5, CoefficientTable(
                kind="A", center=2, count=11, values=a2_table.values[:11]
            ), ctx30)


class TestReconstructions:
    def test_pole_cancellation(self, a2_table):
        # (s-1)^2 Z(s) is entire near 1; its value at s=1 from the
        # A-table equals 1/(2 pi)
        with workdps(60):
            total = mp.fsum(
                a2_table.values[n].value * mp.mpf(-1) ** n / mp.factorial(n)
                for n in range(51)
            )
            assert abs(total - 1 / (2 * mp.pi)) < mp.mpf("1e-10")

    def test_a_b_equivalence_inside_disc(self, a2_table, b2_table):
        va = Z_from_A(0.5, a2_table)
        vb = Z_from_B(0.5, b2_table)
        with workdps(60):
            assert abs(va.value - vb.value) < mp.mpf("1e-15")

    def test_b_beats_a_near_negative_odd(self, a2_table, b2_table):
        # -2 is outside the A-series disc (radius 3 about 2) but the
        # pole-free B-series still converges usefully there
        ref = -mp.mpf(9) / 32
        vb = Z_from_B(-2, b2_table)
        with workdps(60):
            assert abs(vb.value - ref) < mp.mpf("1e-10")
        with pytest.raises(NonConvergenceError):
            Z_from_A(-2, a2_table)

    def test_z_from_b_pole(self, b2_table):
        with pytest.raises(PoleError):
            Z_from_B(-3, b2_table)

    def test_z_from_a_double_pole(self, a2_table):
        with pytest.raises(PoleError):
            Z_from_A(1, a2_table)

    def test_kind_guards(self, a2_table, b2_table):
        with pytest.raises(ValueError):
            Z_from_A(0.5, b2_table)
        with pytest.raises(ValueError):
            Z_from_B(0.5, a2_table)


class TestPoleExpansion:
    def test_laurent_reconstruction_of_z_at_1_5(self, laurent_table,
                                                golden_map):
        refs = golden_map("special_values_30d", "Z")
        ref, _ = refs["1.5"]
        with workdps(60):
            d = mp.mpf("0.5")
            pi2 = 2 * mp.pi
            rec = (
                1 / (pi2 * d * d)
                - mp.log(pi2) / (pi2 * d)
                + mp.fsum(
                    laurent_table.values[n].value * d**n / mp.factorial(n)
                    for n in range(laurent_table.count)
                )
            )
            assert abs(rec - ref) / ref < mp.mpf("1e-15")

    def test_harmonic_identity(self, adr_evaluator, ctx30, laurent_table,
                               golden):
        # H = C_0 - log^2(2 pi)/(4 pi), and both sides reproduce the
        # published constant
        h = harmonic_H(adr_evaluator, ctx30)
        ref = mpf_from_digits(golden("harmonic_constant").entries[0].digits)
        with workdps(130):
            assert abs(h.value - ref) < mp.mpf("1e-25")
            c0 = laurent_table.values[0].value
            assert abs(
                (c0 - mp.log(2 * mp.pi) ** 2 / (4 * mp.pi)) - h.value
            ) < mp.mpf("1e-25")

    def test_partial_sum_route_is_slow(self, zeros, golden):
        # the direct zero-sum approximation converges like 1/t_k
        ref = mpf_from_digits(golden("harmonic_constant").entries[0].digits)
        v = H_partial_from_zeros(200, zeros)
        with workdps(130):
            err = abs(v.value - ref)
            assert err < mp.mpf("1e-2")
            assert err > mp.mpf("1e-8")
