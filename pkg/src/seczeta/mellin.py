"""Mellin-transform route to the secondary zeta function.

Inside the strip 0 < Re(s) < 1, Z(s) splits into a Hurwitz-zeta/cosine
closed-form part and a weighted integral of the zeta logarithmic
derivative along the critical axis:

    Z(s) = -zeta(s,5/4) / (2^{s+1} cos(pi s/2))
           + (1/pi) sin(pi s/2) * I(s),
    I(s) = INT_0^inf t^{-s} [ zeta'/zeta(1/2+t) + 1/(t-1/2) ] dt.

The integral is split at a seam in (1,4): on (0, seam) the bracket is
replaced by its eta-coefficient Taylor series about t = 1/2 (removing
the pole analytically), on (seam, inf) it is integrated directly.  All
s-derivative families I^(m) are produced in one shared quadrature per
segment (the integrand components t^{-s}(-log t)^m share every node).

This route never touches the zeros database or the Gaussian-regularized
continuation, which makes its harmonic-constant output an independent
cross-check of the whole pipeline.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field

import mpmath as mp

from .hiprec import (
    NonConvergenceError,
    PoleError,
    PrecisionContext,
    RealValue,
    derivative_grid,
    integrate_finite,
    integrate_finite_batch,
    integrate_semi_infinite_batch,
    workdps,
)
from .series import CoefficientTable
from .specfun import (
    StieltjesStore,
    default_stieltjes_store,
    eta_coeff,
    poly_mul_trunc,
    poly_recip_trunc,
    zeta_taylor,
)

__all__ = [
    "MellinConfig",
    "zeta_log_deriv",
    "Z_strip",
    "Z_pv",
    "delta_term",
    "I1_deriv",
    "I2_deriv",
    "I_derivs",
    "Z_half_derivs",
    "B_coeffs_at_half",
    "H_via_mellin",
]


@dataclass
class MellinConfig:
    """Knobs for the split-integral evaluation.

    split_point must lie in (1, 4) — the eta series about t = 1/2 has
    convergence radius 3, so the lower segment must end before 7/2; 2 is
    the default seam.  tail_upper_limit = inf integrates the upper
    segment on an unbounded double-exponential grid (the algebraic
    1/(t-1/2) tail makes any finite cutoff painfully slow to converge).
    """

    split_point: float = 2.0
    eta_terms: int = 200
    tail_upper_limit: object = mp.inf
    pv_epsilon_schedule: tuple = (
        1e-2, 1e-3, 1e-4, 1e-5, 1e-6, 1e-7, 1e-8,
    )

    def __post_init__(self):
        if not (1 < self.split_point < 4):
            raise ValueError("split_point must lie in (1, 4)")
        if self.eta_terms < 0:
            raise ValueError("eta_terms must be >= 0")
        sched = tuple(self.pv_epsilon_schedule)
        if any(e <= 0 for e in sched):
            raise ValueError("epsilon schedule must be positive")
        if any(a <= b for a, b in zip(sched, sched[1:])):
            raise ValueError("epsilon schedule must be decreasing")
        self.pv_epsilon_schedule = sched


# ---------------------------------------------------------------------------
# zeta'/zeta with memoization
# ---------------------------------------------------------------------------

_ZLD_CACHE: dict = {}


def zeta_log_deriv(x):
    """zeta'/zeta at real x > 1, memoized per (x, precision).

    Far to the right (x above ~3.33 * digits) the Dirichlet series is
    dominated by its first prime-power terms below one ulp of anything
    the integrands can resolve, so the full evaluator is skipped.
    """
    dps = mp.mp.dps
    x = mp.mpf(x)
    if x == 1:
        raise PoleError("zeta'/zeta has a pole at x = 1")
    if x <= 0:
        raise ValueError("zeta'/zeta helper restricted to x > 0")
    if x > mp.mpf("3.33") * (dps + 5):
        l2, l3 = mp.log(2), mp.log(3)
        return -(
            l2 * mp.power(2, -x)
            + l3 * mp.power(3, -x)
            + l2 * mp.power(4, -x)
        )
    key = (x, dps)
    hit = _ZLD_CACHE.get(key)
    if hit is None:
        hit = mp.zeta(x, derivative=1) / mp.zeta(x)
        _ZLD_CACHE[key] = hit
    return hit


def _bracket(t):
    """zeta'/zeta(1/2+t) + 1/(t-1/2): the pole-free-at-infinity integrand."""
    return zeta_log_deriv(mp.mpf("0.5") + t) + 1 / (t - mp.mpf("0.5"))


# ---------------------------------------------------------------------------
# Eta-series polynomial on the lower segment
# ---------------------------------------------------------------------------


def _eta_values(count: int, store: StieltjesStore, ctx: PrecisionContext):
    return [eta_coeff(n, store, ctx).value for n in range(count + 1)]


def _eta_poly(t, etas):
    """-sum eta_n (t-1/2)^n  (equals the bracket inside radius 3)."""
    x = t - mp.mpf("0.5")
    acc = mp.mpf(0)
    for c in reversed(etas):
        acc = acc * x + c
    return -acc


# ---------------------------------------------------------------------------
# Integral families
# ---------------------------------------------------------------------------


def delta_term(n: int, m: int, s, cfg: MellinConfig, ctx: PrecisionContext) -> RealValue:
    """m-th s-derivative of INT_0^seam (t-1/2)^n t^{-s} dt.

    Differentiation under the integral sign turns the derivative into a
    (-log t)^m weight; the double-exponential grid absorbs both the
    t^{-s} endpoint singularity and the log factors.
    """
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    with workdps(max(mp.mp.dps, ctx.internal_digits)):
        s = mp.mpf(s)
        a = mp.mpf(cfg.split_point)
        half = mp.mpf("0.5")

        def f(t):
            return (t - half) ** n * mp.power(t, -s) * (-mp.log(t)) ** m

        return integrate_finite(f, 0, a, ctx)


def I1_deriv(m: int, s, cfg: MellinConfig, store: StieltjesStore,
             ctx: PrecisionContext) -> RealValue:
    """I1^(m)(s): lower-segment integral with the eta-series bracket."""
    return I_derivs(m, s, cfg, store, ctx, parts="lower")[m]


def I2_deriv(m: int, s, cfg: MellinConfig, ctx: PrecisionContext) -> RealValue:
    """I2^(m)(s): upper-segment integral of the direct bracket."""
    return I_derivs(m, s, cfg, None, ctx, parts="upper")[m]


def I_derivs(m_max: int, s, cfg: MellinConfig, store: StieltjesStore | None,
             ctx: PrecisionContext, parts: str = "both") -> list[RealValue]:
    """All I^(m)(s) for m = 0..m_max in shared batch quadratures.

    The lower segment folds the eta partial sum into the integrand — a
    finite sum/integral swap exactly equal to -sum_n eta_n delta_n^(m) —
    so one quadrature serves every order and every eta index at once.
    """
    if m_max < 0:
        raise ValueError("m_max must be >= 0")
    if parts not in ("both", "lower", "upper"):
        raise ValueError("parts must be both/lower/upper")
    count = m_max + 1
    with workdps(max(mp.mp.dps, ctx.internal_digits)):
        s = mp.mpf(s)
        a = mp.mpf(cfg.split_point)
        lower = upper = None
        if parts in ("both", "lower"):
            if store is None:
                store = default_stieltjes_store()
            etas = _eta_values(cfg.eta_terms, store, ctx)

            def f_lower(t):
                base = mp.power(t, -s) * _eta_poly(t, etas)
                lg = -mp.log(t)
                out = [base]
                for _ in range(m_max):
                    base *= lg
                    out.append(base)
                return out

            lower = integrate_finite_batch(f_lower, 0, a, count, ctx)
            # eta-series truncation near the seam: the omitted tail is
            # roughly geometric with ratio |a - 1/2| / 3 (radius 3)
            rad = abs(a - mp.mpf("0.5")) / 3
            if 0 < rad < 1 and etas:
                tail = abs(etas[-1]) * abs(a - mp.mpf("0.5")) ** len(etas)
                tail *= a / (1 - rad)
                if tail > 0:
                    trunc_cert = int(-mp.log10(tail)) if tail < 1 else 0
                    lower = [
                        RealValue(v.value,
                                  min(v.certified_digits, max(0, trunc_cert)))
                        for v in lower
                    ]
        if parts in ("both", "upper"):

            def f_upper(t):
                base = mp.power(t, -s) * _bracket(t)
                lg = -mp.log(t)
                out = [base]
                for _ in range(m_max):
                    base *= lg
                    out.append(base)
                return out

            if mp.isinf(mp.mpf(cfg.tail_upper_limit)):
                upper = integrate_semi_infinite_batch(f_upper, a, count, ctx)
            else:
                upper = integrate_finite_batch(
                    f_upper, a, cfg.tail_upper_limit, count, ctx
                )
        if parts == "lower":
            return lower
        if parts == "upper":
            return upper
        return [
            RealValue(lo.value + up.value,
                      min(lo.certified_digits, up.certified_digits))
            for lo, up in zip(lower, upper)
        ]


# ---------------------------------------------------------------------------
# Strip evaluation and the principal-value variant
# ---------------------------------------------------------------------------


def _closed_part(s):
    """-zeta(s, 5/4) / (2^{s+1} cos(pi s / 2))."""
    return -mp.zeta(s, mp.mpf("1.25")) / (
        mp.power(2, s + 1) * mp.cos(mp.pi * s / 2)
    )


def Z_strip(s, cfg: MellinConfig, ctx: PrecisionContext,
            store: StieltjesStore | None = None) -> RealValue:
    """Z(s) for 0 < s < 1 from the split Mellin integral."""
    with workdps(max(mp.mp.dps, ctx.internal_digits)):
        s = mp.mpf(s)
        if not (0 < s < 1):
            raise ValueError("the strip representation requires 0 < s < 1")
        i0 = I_derivs(0, s, cfg, store, ctx)[0]
        val = _closed_part(s) + mp.sin(mp.pi * s / 2) / mp.pi * i0.value
        return RealValue(val, certified_digits=min(i0.certified_digits,
                                                   ctx.working_digits))


def Z_pv(s, cfg: MellinConfig, ctx: PrecisionContext) -> RealValue:
    """Z(s) for s < 1 via the principal-value transform.

    The symmetric epsilon exclusion around the t = 1/2 pole is driven
    down the configured schedule and extrapolated polynomially to
    epsilon = 0.  A cross-check route: expect ~10 digits, not full
    precision.
    """
    with workdps(max(mp.mp.dps, ctx.internal_digits)):
        s = mp.mpf(s)
        if not s < 1:
            raise ValueError("the principal-value route requires s < 1")
        if s <= 0 and mp.isint(s) and int(s) % 2 == 1:
            raise PoleError("simple pole at s=%s" % s)
        half = mp.mpf("0.5")

        def g(t):
            return mp.power(t, -s) * zeta_log_deriv(half + t)

        # epsilon-independent outer pieces
        fixed = integrate_finite(lambda t: g(t), 1, 2, ctx).value
        fixed += integrate_semi_infinite_batch(
            lambda t: [g(t)], 2, 1, ctx
        )[0].value
        eps_vals = []
        for eps in cfg.pv_epsilon_schedule:
            e = mp.mpf(eps)
            inner = integrate_finite(g, 0, half - e, ctx).value
            inner += integrate_finite(g, half + e, 1, ctx).value
            eps_vals.append((e, inner + fixed))
        # Neville extrapolation to epsilon = 0
        xs = [e for e, _ in eps_vals]
        table = [v for _, v in eps_vals]
        n = len(table)
        prev_top = table[0]
        for lvl in range(1, n):
            for i in range(n - lvl):
                table[i] = (
                    xs[i + lvl] * table[i] - xs[i] * table[i + 1]
                ) / (xs[i + lvl] - xs[i])
            prev_top, _last = table[0], prev_top
        pv = table[0]
        err = abs(pv - _last)
        closed = (
            -mp.zeta(s, mp.mpf("1.25")) + mp.power(2, 2 * s) * mp.cos(mp.pi * s)
        ) / (mp.power(2, s + 1) * mp.cos(mp.pi * s / 2))
        val = closed + mp.sin(mp.pi * s / 2) / mp.pi * pv
        scale = max(abs(val), mp.mpf(1))
        cert = ctx.working_digits
        if err > 0:
            cert = max(0, min(cert, int(-mp.log10(err / scale)) - 1))
        if cert < 3:
            raise NonConvergenceError(
                "principal-value extrapolation failed to settle"
            )
        return RealValue(val, certified_digits=cert)


# ---------------------------------------------------------------------------
# Derivatives at the center 1/2 and the B-table
# ---------------------------------------------------------------------------


def _closed_part_taylor(m_max: int, dps: int) -> list:
    """Taylor coefficients (in u = s - 1/2) of the closed part.

    Series product of the Hurwitz-zeta Taylor row, the exponential
    2^{-s-1} = 2^{-3/2} e^{-u log 2}, and the reciprocal cosine
    cos(pi s/2) = (sqrt2/2)(cos(pi u/2) - sin(pi u/2)).
    """
    K = m_max + 1
    with workdps(dps + 10):
        hz = zeta_taylor(mp.mpf("0.5"), m_max, dps + 10, offset=mp.mpf("1.25"))
        l2 = mp.log(2)
        ex = [mp.mpf(1)]
        for k in range(1, K):
            ex.append(ex[-1] * (-l2) / k)
        ex = [c * mp.power(2, mp.mpf("-1.5")) for c in ex]
        # cos(pi/4 + pi u/2) expansion
        cosine = [mp.mpf(0)] * K
        r = mp.sqrt(2) / 2
        pw = mp.mpf(1)
        for k in range(K):
            if k:
                pw *= mp.pi / 2 / k
            # d^k cos at pi/4 cycles: cos, -sin, -cos, sin -> factor r * sign
            sign = (1, -1, -1, 1)[k % 4]
            cosine[k] = sign * r * pw
        inv = poly_recip_trunc(cosine, K)
        out = poly_mul_trunc(poly_mul_trunc(hz, ex, K), inv, K)
        return [-c for c in out]


def Z_half_derivs(m_max: int, cfg: MellinConfig, store: StieltjesStore,
                  ctx: PrecisionContext) -> CoefficientTable:
    """Z^(m)(1/2) for m = 0..m_max, fully inside the Mellin route.

    The closed part is differentiated by truncated-series arithmetic;
    the integral part combines the sine-factor derivative cycle with the
    batched I^(n)(1/2) family by the Leibniz rule.
    """
    dps = max(mp.mp.dps, ctx.internal_digits)
    with workdps(dps):
        half = mp.mpf("0.5")
        closed = _closed_part_taylor(m_max, dps)
        ivals = I_derivs(m_max, half, cfg, store, ctx)
        s4 = mp.sqrt(2) / 2  # sin(pi/4) = cos(pi/4)
        values = []
        cert_floor = min(v.certified_digits for v in ivals)
        for m in range(m_max + 1):
            acc = closed[m] * mp.factorial(m)
            for n_ in range(m + 1):
                k = m - n_
                # d^k sin(pi s/2) = (pi/2)^k sin(pi s/2 + k pi/2)
                sign = (1, 1, -1, -1)[k % 4]
                trig = s4 * sign * mp.power(mp.pi / 2, k)
                acc += (
                    mp.mpf(math.comb(m, n_))
                    * trig
                    * ivals[n_].value
                    / mp.pi
                )
            values.append(
                RealValue(acc, certified_digits=min(ctx.working_digits,
                                                    cert_floor))
            )
    return CoefficientTable(
        kind="Zderiv", center=mp.mpf("0.5"), count=m_max + 1, values=values,
        provenance="mellin",
    )


def B_coeffs_at_half(n_max: int, cfg: MellinConfig, store: StieltjesStore,
                     ctx: PrecisionContext) -> CoefficientTable:
    """B^(n)(1/2): derivatives of (s-1)^2 Z(s) / Gamma((s+1)/2) at 1/2.

    Assembled as a triple series product: the Z Taylor row from
    Z_half_derivs, the exact quadratic (u - 1/2)^2, and the reciprocal
    gamma Taylor row (numeric grid on an entire function).
    """
    zd = Z_half_derivs(n_max, cfg, store, ctx)
    dps = max(mp.mp.dps, ctx.internal_digits)
    rg = derivative_grid(
        lambda x: mp.rgamma((x + 1) / 2), mp.mpf("0.5"), n_max, ctx, radius=1.0
    )
    with workdps(dps):
        K = n_max + 1
        zser = [zd.values[m].value / mp.factorial(m) for m in range(K)]
        quad = [mp.mpf("0.25"), mp.mpf(-1), mp.mpf(1)] + [mp.mpf(0)] * max(
            0, K - 3
        )
        gser = [rg[m].value / mp.factorial(m) for m in range(K)]
        prod = poly_mul_trunc(poly_mul_trunc(zser, quad[:K], K), gser, K)
        values = []
        for n in range(K):
            cert = min(zd.values[n].certified_digits, rg[n].certified_digits)
            values.append(
                RealValue(prod[n] * mp.factorial(n), certified_digits=cert)
            )
    return CoefficientTable(
        kind="B", center=mp.mpf("0.5"), count=n_max + 1, values=values,
        provenance="mellin",
    )


def H_via_mellin(cfg: MellinConfig, store: StieltjesStore,
                 ctx: PrecisionContext, n_max: int = 50) -> RealValue:
    """The harmonic constant, independently of the zeros database.

    With F(s) = Gamma((s+1)/2) * sum_n B^(n)(1/2) (s-1/2)^n / n!
    (= (s-1)^2 Z(s)), the Laurent constant of Z at s=1 is F''(1)/2 and
    H = F''(1)/2 - log^2(2pi)/(4pi).  The s -> 1 limit is analytic — no
    epsilon schedule — so accuracy is set purely by the B-series
    truncation at n_max.
    """
    bt = B_coeffs_at_half(n_max, cfg, store, ctx)
    dps = max(mp.mp.dps, ctx.internal_digits)
    with workdps(dps):
        x = mp.mpf("0.5")  # evaluation offset 1 - 1/2
        g = [mp.mpf(0)] * 3
        for k in range(3):
            g[k] = mp.fsum(
                bt.values[n].value * mp.power(x, n - k) / mp.factorial(n - k)
                for n in range(k, bt.count)
            )
        gam = mp.euler
        d0 = mp.mpf(1)
        d1 = -gam / 2  # (1/2) Gamma'(1)
        d2 = (gam**2 + mp.pi**2 / 6) / 4  # (1/4) Gamma''(1)
        f2 = d2 * g[0] + 2 * d1 * g[1] + d0 * g[2]
        h = f2 / 2 - mp.log(2 * mp.pi) ** 2 / (4 * mp.pi)
        # truncation estimate: geometric continuation of the series tail
        tail = abs(bt.values[-1].value * mp.power(x, bt.count - 3)
                   / mp.factorial(bt.count - 3))
        cert = ctx.working_digits
        if tail > 0:
            cert = max(0, min(cert, int(-mp.log10(tail / max(abs(h), 1)))))
        return RealValue(h, certified_digits=cert)
