"""Analytic continuation of the secondary zeta function by Gaussian
regularization.

Z(s) = sum over the ordered imaginary parts t_n of the Riemann zeta
non-trivial zeros of t_n^{-s}.  The defining series only converges for
s > 1; this module evaluates the continuation everywhere off the pole
set by splitting the underlying Mellin integral at a small parameter a
and assembling four rapidly convergent pieces:

    Z(s) = A(s) - P(s) + E(s) - S(s)

* A — incomplete-gamma regularized zero sum (converges like e^{-a t^2}),
* P — prime-power (von Mangoldt) explicit-formula sum,
* E — exponential small-x series,
* S — singular series carrying the double pole at s=1 and the simple
      poles at negative odd integers.

The singular series carries an overall 1/(4 sqrt(pi)) normalization on
its bracket (principal part plus Bernoulli-polynomial asymptotic sum);
dropping it is a common transcription error and is caught by the
calibration checks against the closed forms for Z(2m).

Accuracy is governed by the knob set ADRParams; `adr_params_for` picks
a balanced set for a requested digit count given the available zeros.
Everything here follows the ambient-precision rule: evaluation happens
at max(current mpf precision, ctx.internal_digits), so numerical
differentiation — which raises ambient precision around each stencil
node — propagates through the inner sums.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import mpmath as mp

from . import dataio
from .hiprec import (
    InsufficientPrecisionError,
    NonConvergenceError,
    PoleError,
    PrecisionContext,
    RealValue,
    derivative_grid,
    matched_significant_digits,
    mpf_from_digits,
    workdps,
)
from .specfun import (
    bernoulli_poly_three_quarters,
    prime_power_base,
    _sieve,
)

__all__ = [
    "ZerosDatabase",
    "ADRParams",
    "load_zeros",
    "default_zeros_database",
    "adr_params_for",
    "theta_direct",
    "adr_P",
    "adr_E",
    "adr_S",
    "adr_A",
    "Z_adr",
    "Z_adr_deriv",
    "Z_adr_derivs",
    "calibrate",
]


# ---------------------------------------------------------------------------
# Domain types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ZerosDatabase:
    """Ordered imaginary parts t_1 < t_2 < ... with certified precision."""

    entries: tuple  # of (index, RealValue)
    min_certified_digits: int
    source_path: str

    def __len__(self) -> int:
        return len(self.entries)

    def ordinate(self, n: int) -> RealValue:
        """t_n (1-based)."""
        idx, val = self.entries[n - 1]
        if idx != n:
            raise ValueError("zeros database index mismatch at n=%d" % n)
        return val

    def ordinates(self, count: int | None = None) -> list:
        if count is None:
            count = len(self.entries)
        if count > len(self.entries):
            raise InsufficientPrecisionError(
                "requested %d zeros, database holds %d" % (count, len(self.entries))
            )
        return [val.value for _, val in self.entries[:count]]

    @property
    def max_ordinate(self):
        return self.entries[-1][1].value


@dataclass
class ADRParams:
    """Truncation knobs for the regularized evaluation.

    a: integral split point; N: singular-series truncation; zero_count:
    zero-sum truncation; mangoldt_limit: prime-power sum cutoff;
    e_terms: exponential-series truncation.  The defaults reproduce the
    30-digit reference grid.
    """

    a: float = 0.015
    N: int = 100
    zero_count: int = 40
    mangoldt_limit: int = 100
    e_terms: int = 300

    def __post_init__(self):
        if not self.a > 0:
            raise ValueError("split point a must be positive")
        for name in ("N", "zero_count", "mangoldt_limit", "e_terms"):
            if getattr(self, name) < 1:
                raise ValueError("%s must be >= 1" % name)

    def key(self):
        return (str(self.a), self.N, self.zero_count, self.mangoldt_limit,
                self.e_terms)


def load_zeros(path, min_digits: int) -> ZerosDatabase:
    """Read and validate an ordered zeros file."""
    f = dataio.read_indexed_file(path)
    prec = f.precision_digits
    if prec is None:
        raise ValueError("zeros file missing precision_digits header")
    if prec < min_digits:
        raise ValueError(
            "zeros file certifies %d digits; %d required" % (prec, min_digits)
        )
    if not f.entries:
        raise ValueError("zeros file is empty")
    entries = []
    prev = None
    for expect, (idx, digits) in enumerate(f.entries, start=1):
        if idx != expect:
            raise ValueError("zeros file indices must be 1,2,3,...")
        t = mpf_from_digits(digits)
        if prev is not None and not t > prev:
            raise ValueError("zero ordinates must be strictly increasing")
        prev = t
        entries.append((idx, RealValue(t, certified_digits=prec)))
    t1 = entries[0][1].value
    if not (mp.mpf("14.13") < t1 < mp.mpf("14.14")):
        raise ValueError("first zero ordinate outside (14.13, 14.14)")
    return ZerosDatabase(
        entries=tuple(entries),
        min_certified_digits=prec,
        source_path=str(path),
    )


@functools.lru_cache(maxsize=4)
def default_zeros_database(name: str = "zeros_300d.txt") -> ZerosDatabase:
    return load_zeros(dataio.data_path(name), min_digits=100)


# ---------------------------------------------------------------------------
# Parameter selection
# ---------------------------------------------------------------------------


def adr_params_for(target_digits: int, zeros: ZerosDatabase) -> ADRParams:
    """Balanced knob set reaching ``target_digits`` with the given zeros.

    The split point a trades the zero-sum truncation e^{-a t_K^2}
    against the singular asymptotic series, whose smallest term is
    ~e^{-pi^2/(4a)}; both must clear the target.  All other truncations
    follow from a by first-omitted-term scans.
    """
    if target_digits < 1:
        raise ValueError("target_digits must be >= 1")
    D = target_digits + 15
    with workdps(40):
        tK = zeros.max_ordinate
        ln10 = mp.log(10)
        a = float(ln10 * D / tK**2)
        # smallest singular-series term ~ 2 e^{-pi^2/(4a)}; require margin
        reach = float(mp.pi**2 / (4 * a) / ln10)
        if reach < D:
            raise InsufficientPrecisionError(
                "zeros database supports ~%d digits; %d requested"
                % (int(mp.pi**2 / (4 * ln10) * tK**2 / (ln10 * D)) , target_digits)
            )
        # singular series truncation: term_n ~ 2 (4 sqrt(a)/2pi)^n Gamma(n/2)
        r = 4 * mp.sqrt(a) / (2 * mp.pi)
        N = None
        for n in range(2, 4000):
            term = 2 * r**n * mp.gamma(mp.mpf(n) / 2)
            if term < mp.mpf(10) ** (-D):
                N = n
                break
        if N is None:
            raise InsufficientPrecisionError(
                "singular series cannot reach %d digits at a=%g"
                % (target_digits, a)
            )
        # prime-power cutoff: log^2(L) / (4a) > D ln 10 (plus margin)
        L = int(mp.exp(2 * mp.sqrt(a * (D + 5) * ln10))) + 10
        # exponential series: a^n / (4^n n!) < 10^-D
        e_terms = 1
        term = mp.mpf(1)
        for n in range(1, 10000):
            term *= a / (4 * n)
            if term < mp.mpf(10) ** (-D):
                e_terms = n
                break
    return ADRParams(
        a=a,
        N=N,
        zero_count=len(zeros),
        mangoldt_limit=max(L, 10),
        e_terms=max(e_terms, 4),
    )


# ---------------------------------------------------------------------------
# The four terms
# ---------------------------------------------------------------------------


def _ambient_dps(ctx: PrecisionContext) -> int:
    return max(mp.mp.dps, ctx.internal_digits)


def _pole_check(s) -> None:
    if s == 1:
        raise PoleError("double pole at s=1")
    if s <= 0 and mp.isint(s) and int(s) % 2 == 1:
        raise PoleError("simple pole at s=%s" % s)


def _is_dispatch_point(s) -> bool:
    """Nonpositive even integers: removable for Z but singular termwise."""
    return s <= 0 and mp.isint(s) and int(s) % 2 == 0


def theta_direct(x, zeros: ZerosDatabase, zero_count: int | None = None) -> RealValue:
    """Σ_n e^{-t_n^2 x}, truncated, with an integral tail estimate."""
    with workdps(max(mp.mp.dps, zeros.min_certified_digits)):
        x = mp.mpf(x)
        if not x > 0:
            raise ValueError("theta_direct requires x > 0")
        ts = zeros.ordinates(zero_count)
        total = mp.fsum(mp.exp(-t * t * x) for t in ts)
        tK = ts[-1]
        tail = mp.exp(-tK * tK * x) / (2 * tK * tK * x)
        if total == 0 or tail >= abs(total):
            certified = 0
        else:
            certified = max(0, int(-mp.log10(tail / abs(total))))
        return RealValue(total, certified_digits=certified)


def _adr_A_impl(s, p: ADRParams, zeros: ZerosDatabase, dps):
    """(value, absolute truncation estimate) of the regularized zero sum."""
    with workdps(dps):
        s = mp.mpf(s)
        a = mp.mpf(p.a)
        rg = mp.rgamma(s / 2) if not _gamma_pole(s / 2) else mp.mpf(0)
        ts = zeros.ordinates(p.zero_count)
        terms = [
            mp.gammainc(s / 2, a=a * t * t, b=mp.inf) * rg * mp.power(t, -s)
            for t in ts
        ]
        total = mp.fsum(terms)
        tK = ts[-1]
        # continuum tail: zero density ~ log(t/2pi)/2pi near t_K
        dens = mp.log(tK / (2 * mp.pi)) / (2 * mp.pi)
        est = (
            abs(rg)
            * mp.exp(-a * tK * tK)
            * mp.power(tK, -s)
            * (1 + dens / (2 * a * tK))
        )
        return total, est


def _gamma_pole(x) -> bool:
    return x <= 0 and mp.isint(x)


def _adr_P_impl(s, p: ADRParams, dps):
    with workdps(dps):
        s = mp.mpf(s)
        a = mp.mpf(p.a)
        rg = mp.rgamma(s / 2) if not _gamma_pole(s / 2) else mp.mpf(0)
        pref = 1 / (2 * mp.sqrt(mp.pi))
        terms = []
        cut = mp.mpf(10) ** (-(dps + 5))
        for n in range(2, p.mangoldt_limit + 1):
            base = prime_power_base(n)
            if base is None:
                continue
            lg = mp.log(base)
            ln = mp.log(n)
            g = mp.gammainc((1 - s) / 2, a=ln * ln / (4 * a), b=mp.inf)
            term = lg / mp.sqrt(n) * g * mp.power(2 / ln, 1 - s)
            terms.append(term)
            if abs(term) < cut and n > 16:
                break
        total = pref * rg * mp.fsum(terms)
        # first-omitted-term estimate at n = limit + 1
        n1 = p.mangoldt_limit + 1
        ln = mp.log(n1)
        est = (
            pref
            * abs(rg)
            * ln
            / mp.sqrt(n1)
            * mp.gammainc((1 - s) / 2, a=ln * ln / (4 * a), b=mp.inf)
            * mp.power(2 / ln, 1 - mp.mpf(s))
            * 3
        )
        return total, abs(est)


def _adr_E_impl(s, p: ADRParams, dps):
    with workdps(dps):
        s = mp.mpf(s)
        a = mp.mpf(p.a)
        if _is_dispatch_point(s) and -int(s) // 2 <= p.e_terms:
            raise PoleError("pole term at n = %d in the exponential series" % (-int(s) // 2))
        rg = mp.rgamma(s / 2) if not _gamma_pole(s / 2) else mp.mpf(0)
        terms = []
        pw = mp.power(a, s / 2)
        cut = mp.mpf(10) ** (-(dps + 5))
        last = mp.mpf(0)
        for n in range(p.e_terms + 1):
            if n > 0:
                pw *= a / (4 * n)
            last = pw / (n + s / 2)
            terms.append(last)
            if abs(last) < cut and n > 2:
                break
        total = rg * mp.fsum(terms)
        est = abs(rg * last) * (a / 4) / (1 - a / 4)
        return total, abs(est)


def _adr_S_impl(s, p: ADRParams, dps):
    with workdps(dps):
        s = mp.mpf(s)
        a = mp.mpf(p.a)
        _pole_check(s)
        rg = mp.rgamma(s / 2) if not _gamma_pole(s / 2) else mp.mpf(0)
        pref = mp.power(a, (s - 1) / 2) / (4 * mp.sqrt(mp.pi)) * rg
        bracket = -2 / (s - 1) ** 2 + (mp.euler + mp.log(16 * mp.pi**2 * a)) / (
            s - 1
        )
        r4 = 4 * mp.sqrt(a)
        pw = mp.mpf(1)
        terms = []
        for n in range(1, p.N + 1):
            pw *= r4 / n
            b = bernoulli_poly_three_quarters(n)
            if not b:
                continue
            bn = mp.mpf(b.numerator) / b.denominator
            terms.append(pw * bn * mp.gamma(mp.mpf(n) / 2) / (s + n - 1))
        total = pref * (bracket + mp.fsum(terms))
        # first-omitted asymptotic term
        n1 = p.N + 1
        b1 = bernoulli_poly_three_quarters(n1)
        if not b1:
            n1 += 1
            b1 = bernoulli_poly_three_quarters(n1)
        lw = (
            n1 * mp.log(r4)
            + mp.log(abs(mp.mpf(b1.numerator)) / b1.denominator)
            + mp.loggamma(mp.mpf(n1) / 2)
            - mp.loggamma(n1 + 1)
        )
        est = abs(pref) * mp.exp(lw) / abs(s + n1 - 1)
        return total, abs(est)


def _certify(value, est, ctx: PrecisionContext) -> RealValue:
    scale = max(abs(value), mp.mpf(10) ** (-ctx.working_digits))
    if est <= 0:
        cert = ctx.working_digits
    else:
        cert = max(0, min(ctx.working_digits, int(-mp.log10(est / scale))))
    return RealValue(+value, certified_digits=cert)


def adr_P(s, p: ADRParams, ctx: PrecisionContext) -> RealValue:
    """Prime-power (von Mangoldt) explicit-formula term."""
    v, e = _adr_P_impl(s, p, _ambient_dps(ctx))
    with workdps(_ambient_dps(ctx)):
        return _certify(v, e, ctx)


def adr_E(s, p: ADRParams, ctx: PrecisionContext) -> RealValue:
    """Exponential small-x series term."""
    v, e = _adr_E_impl(s, p, _ambient_dps(ctx))
    with workdps(_ambient_dps(ctx)):
        return _certify(v, e, ctx)


def adr_S(s, p: ADRParams, ctx: PrecisionContext) -> RealValue:
    """Singular term: pole principal parts plus the asymptotic series."""
    v, e = _adr_S_impl(s, p, _ambient_dps(ctx))
    with workdps(_ambient_dps(ctx)):
        return _certify(v, e, ctx)


def adr_A(s, p: ADRParams, zeros: ZerosDatabase, ctx: PrecisionContext) -> RealValue:
    """Incomplete-gamma regularized zero sum."""
    v, e = _adr_A_impl(s, p, zeros, _ambient_dps(ctx))
    with workdps(_ambient_dps(ctx)):
        return _certify(v, e, ctx)


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


def Z_adr(s, p: ADRParams, zeros: ZerosDatabase, ctx: PrecisionContext) -> RealValue:
    """Z(s) = A - P + E - S at any real s off the pole/dispatch set."""
    dps = _ambient_dps(ctx)
    with workdps(dps):
        s = mp.mpf(s)
        _pole_check(s)
        if _is_dispatch_point(s):
            raise PoleError(
                "s=%s requires the closed-form route (removable termwise pole)" % s
            )
        av, ae = _adr_A_impl(s, p, zeros, dps)
        pv, pe = _adr_P_impl(s, p, dps)
        ev, ee = _adr_E_impl(s, p, dps)
        sv, se = _adr_S_impl(s, p, dps)
        total = av - pv + ev - sv
        return _certify(total, ae + pe + ee + se, ctx)


def _deriv_safety(s) -> bool:
    """Whether a stencil centered at s must avoid evaluating at s itself."""
    return mp.isint(s) and mp.mpf(s) <= 1


def Z_adr_derivs(
    s,
    m_max: int,
    p: ADRParams,
    zeros: ZerosDatabase,
    ctx: PrecisionContext,
    radius: float | None = None,
    oversample: int | None = None,
) -> list[RealValue]:
    """All derivatives Z^(m)(s), m = 0..m_max, from one shared stencil."""
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        _pole_check(s)
        if radius is None:
            # stay clear of the nearest pole (all integers <= 1)
            gap = abs(s - mp.nint(s)) if s < 2.5 else mp.mpf(1)
            if mp.isint(s):
                gap = mp.mpf(1)
            radius = float(min(mp.mpf(1), max(gap, mp.mpf("0.25"))))
        exclude = bool(_deriv_safety(s))

    def f(x):
        return Z_adr(x, p, zeros, ctx).value

    return derivative_grid(
        f, s, m_max, ctx, radius=radius, exclude_center=exclude,
        oversample=oversample,
    )


def Z_adr_deriv(
    s, m: int, p: ADRParams, zeros: ZerosDatabase, ctx: PrecisionContext
) -> RealValue:
    """m-th derivative of Z at s by stencil differentiation."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    return Z_adr_derivs(s, m, p, zeros, ctx)[m]


# ---------------------------------------------------------------------------
# Calibration
# ---------------------------------------------------------------------------


def calibrate(
    target_s,
    candidates,
    zeros: ZerosDatabase,
    ctx: PrecisionContext,
    min_match: int = 6,
) -> ADRParams:
    """Pick the (a, N) candidate best matching closed-form anchors.

    Anchors are the exact-route values Z(2) and Z(4); each candidate is
    scored by its worst digit match over the anchors.  The winning
    parameter set is returned with the achieved score attached as
    ``calibration_matched_digits``.
    """
    from .voros import Z_even

    if not candidates:
        raise ValueError("calibrate requires at least one (a, N) candidate")
    anchors = []
    from .hiprec import digit_string

    with workdps(ctx.internal_digits):
        for m in (1, 2):
            ref = Z_even(m, ctx)
            anchors.append((2 * m, digit_string(ref.value, ctx.working_digits)))
    best = None
    for a, N in candidates:
        p = ADRParams(a=a, N=N, zero_count=min(len(zeros), 160),
                      mangoldt_limit=100, e_terms=300)
        score = None
        with workdps(ctx.internal_digits):
            for s_anchor, ref_digits in anchors:
                got = Z_adr(s_anchor, p, zeros, ctx)
                d = matched_significant_digits(got.value, ref_digits)
                score = d if score is None else min(score, d)
        if best is None or score > best[0]:
            best = (score, p)
    score, winner = best
    if score < min_match:
        raise NonConvergenceError(
            "best calibration candidate matched only %d digits (< %d)"
            % (score, min_match)
        )
    winner.calibration_matched_digits = score
    return winner
