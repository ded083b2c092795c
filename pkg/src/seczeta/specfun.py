"""Arbitrary-precision special functions and arithmetic utilities.

Scalar transcendental functions (gamma, incomplete gamma, Riemann and
Hurwitz zeta, Dirichlet beta) are backed by mpmath, evaluated at the
context's internal precision and rounded back — mpmath's evaluators are
themselves Euler-Maclaurin / series-continued-fraction based and match
the accuracy contract required here.

On top of those this module provides the exact-arithmetic utilities
(Bernoulli polynomials, Euler numbers, primes, von Mangoldt), the prime
zeta derivatives, the Stieltjes/eta constant store, and a batch
Euler-Maclaurin engine producing all Taylor coefficients of zeta about a
real point in one pass (the workhorse behind high-order log-zeta
derivatives, where stencil differentiation would lose ~0.6 digits per
order).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath as mp
import numpy as np

from .hiprec import (
    InsufficientPrecisionError,
    PoleError,
    PrecisionContext,
    RealValue,
    derivative_num,
    mpf_from_digits,
    workdps,
)
from . import dataio

__all__ = [
    "PrimeTable",
    "StieltjesStore",
    "gamma",
    "recip_gamma",
    "upper_incomplete_gamma",
    "riemann_zeta",
    "hurwitz_zeta",
    "dirichlet_beta",
    "bernoulli_number",
    "bernoulli_poly",
    "bernoulli_poly_three_quarters",
    "euler_number",
    "prime_power_base",
    "von_mangoldt",
    "prime_zeta_deriv",
    "stieltjes",
    "eta_coeff",
    "load_stieltjes",
    "default_stieltjes_store",
    "zeta_taylor",
    "poly_mul_trunc",
    "poly_log_trunc",
    "poly_recip_trunc",
]


# ---------------------------------------------------------------------------
# Scalar special functions
# ---------------------------------------------------------------------------


def _is_nonpositive_int(x) -> bool:
    return x <= 0 and mp.isint(x)


def gamma(x, ctx: PrecisionContext) -> RealValue:
    with workdps(ctx.internal_digits):
        x = mp.mpf(x)
        if _is_nonpositive_int(x):
            raise PoleError("gamma pole at %s" % x)
        return RealValue(mp.gamma(x), certified_digits=ctx.working_digits)


def recip_gamma(x, ctx: PrecisionContext) -> RealValue:
    """1/Γ(x), entire; exactly 0 at non-positive integers."""
    with workdps(ctx.internal_digits):
        x = mp.mpf(x)
        if _is_nonpositive_int(x):
            return RealValue(mp.mpf(0), certified_digits=ctx.working_digits)
        return RealValue(mp.rgamma(x), certified_digits=ctx.working_digits)


def upper_incomplete_gamma(s, x, ctx: PrecisionContext) -> RealValue:
    """Γ(s, x) for x > 0, any real s (negative s via upward recurrence)."""
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        x = mp.mpf(x)
        if x <= 0:
            raise ValueError("upper incomplete gamma requires x > 0")
        return RealValue(mp.gammainc(s, a=x, b=mp.inf),
                         certified_digits=ctx.working_digits)


def riemann_zeta(s, ctx: PrecisionContext) -> RealValue:
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        if s == 1:
            raise PoleError("zeta pole at s=1")
        return RealValue(mp.zeta(s), certified_digits=ctx.working_digits)


def hurwitz_zeta(s, a, ctx: PrecisionContext) -> RealValue:
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        a = mp.mpf(a)
        if s == 1:
            raise PoleError("Hurwitz zeta pole at s=1")
        if a <= 0:
            raise ValueError("Hurwitz zeta requires a > 0")
        return RealValue(mp.zeta(s, a), certified_digits=ctx.working_digits)


def dirichlet_beta(s, ctx: PrecisionContext) -> RealValue:
    """β(s) via the Hurwitz combination 4^-s (ζ(s,1/4) − ζ(s,3/4))."""
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        quarter = mp.mpf(1) / 4
        val = mp.mpf(4) ** (-s) * (mp.zeta(s, quarter) - mp.zeta(s, 3 * quarter))
        return RealValue(val, certified_digits=ctx.working_digits)


# ---------------------------------------------------------------------------
# Exact rational / integer sequences
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def bernoulli_number(n: int) -> Fraction:
    """Exact rational Bernoulli number B_n (B_1 = -1/2 convention)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 1:
        return Fraction(-1, 2)
    if n % 2 == 1:
        return Fraction(0)
    p, q = mp.bernfrac(n)
    return Fraction(int(p), int(q))


def bernoulli_poly(n: int, x: Fraction) -> Fraction:
    """Exact rational Bernoulli polynomial B_n(x)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    x = Fraction(x)
    return sum(
        (math.comb(n, k) * bernoulli_number(k)) * x ** (n - k)
        for k in range(n + 1)
    )


@functools.lru_cache(maxsize=None)
def bernoulli_poly_three_quarters(n: int) -> Fraction:
    """Exact B_n(3/4), via B_n(3/4) = (-1)^n [(2^{1-n}-1) 2^{-n} B_n - n E_{n-1} 4^{-n}].

    Much cheaper than the generic binomial expansion for the large orders
    the Gaussian-regularization singular series needs (E_{n-1} vanishes
    for even n, B_n vanishes for odd n > 1, so each parity costs one
    cached sequence lookup).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    bpart = (Fraction(2) ** (1 - n) - 1) * Fraction(1, 2**n) * bernoulli_number(n)
    epart = Fraction(0)
    if n >= 1 and (n - 1) % 2 == 0:
        epart = Fraction(n * euler_number(n - 1), 4**n)
    sign = -1 if n % 2 else 1
    return sign * (bpart - epart)


@functools.lru_cache(maxsize=None)
def euler_number(k: int) -> int:
    """Exact integer Euler number E_k for even k (E_odd = 0 rejected)."""
    if k < 0 or k % 2 == 1:
        raise ValueError("Euler numbers requested only for even k >= 0")
    if k == 0:
        return 1
    n = k // 2
    # sum_{j=0}^{n} C(2n, 2j) E_{2j} = 0
    acc = 0
    for j in range(n):
        acc += math.comb(k, 2 * j) * euler_number(2 * j)
    return -acc


# ---------------------------------------------------------------------------
# Primes and von Mangoldt
# ---------------------------------------------------------------------------


class PrimeTable:
    """All primes up to ``limit``, found by a segmented sieve."""

    def __init__(self, limit: int):
        if limit < 2:
            raise ValueError("limit must be >= 2")
        self.limit = int(limit)
        self.primes = _sieve(self.limit)

    def __len__(self) -> int:
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)

    def __repr__(self):
        return "PrimeTable(limit=%d, count=%d)" % (self.limit, len(self.primes))


@functools.lru_cache(maxsize=8)
def _sieve(limit: int) -> np.ndarray:
    root = int(math.isqrt(limit))
    base = np.ones(root + 1, dtype=bool)
    base[:2] = False
    for p in range(2, int(math.isqrt(root)) + 1):
        if base[p]:
            base[p * p :: p] = False
    small = np.nonzero(base)[0]
    out = [small[small <= limit]]
    seg = max(1 << 18, root + 1)
    lo = root + 1
    while lo <= limit:
        hi = min(lo + seg - 1, limit)
        mask = np.ones(hi - lo + 1, dtype=bool)
        for p in small:
            start = ((lo + p - 1) // p) * p
            mask[start - lo :: p] = False
        out.append(np.nonzero(mask)[0] + lo)
        lo = hi + 1
    return np.concatenate(out).astype(np.int64)


def prime_power_base(n: int):
    """Return p if n = p^k for a prime p (k >= 1), else None."""
    if n < 2:
        return None
    for p in range(2, math.isqrt(n) + 1):
        if n % p == 0:
            while n % p == 0:
                n //= p
            return p if n == 1 else None
    return n  # n itself prime


def von_mangoldt(n: int) -> RealValue:
    """Λ(n): log p on prime powers, exact zero elsewhere."""
    if n < 1:
        raise ValueError("n must be >= 1")
    p = prime_power_base(n)
    if p is None:
        return RealValue(mp.mpf(0), certified_digits=mp.mp.dps)
    return RealValue(mp.log(p), certified_digits=mp.mp.dps)


def prime_zeta_deriv(m: int, s, cutoff: int, ctx: PrecisionContext) -> RealValue:
    """m-th derivative of the prime zeta function, truncated at ``cutoff``.

    Returns (-1)^m sum_{p <= cutoff} log^m(p) / p^s; the certified digit
    count reflects the truncation-bound estimate
    int_cutoff^inf log^m(t)/t^s dt.
    """
    if m < 0:
        raise ValueError("m must be >= 0")
    if cutoff < 2:
        raise ValueError("cutoff must be >= 2")
    with workdps(ctx.internal_digits):
        s = mp.mpf(s)
        if s <= 1:
            raise ValueError("prime zeta derivative requires s > 1")
        primes = _sieve(int(cutoff))
        terms = []
        for p in primes:
            pi = int(p)
            lg = mp.log(pi)
            terms.append(lg**m * mp.power(pi, -s))
        total = mp.fsum(terms)
        if m % 2 == 1:
            total = -total
        # tail bound: int_c^inf log^m t / t^s dt = Gamma(m+1, (s-1) log c)/(s-1)^(m+1)
        c = mp.mpf(int(cutoff))
        tail = mp.gammainc(m + 1, a=(s - 1) * mp.log(c), b=mp.inf) / (s - 1) ** (
            m + 1
        )
        if tail == 0:
            certified = ctx.working_digits
        else:
            rel = tail / max(abs(total), mp.mpf(10) ** (-ctx.working_digits))
            certified = max(0, min(ctx.working_digits, int(-mp.log10(rel))))
        return RealValue(total, certified_digits=certified)


# ---------------------------------------------------------------------------
# Stieltjes and eta constants
# ---------------------------------------------------------------------------


@dataclass
class StieltjesStore:
    """Ordered γ_0, γ_1, ... constants, usually file-backed."""

    values: list[RealValue]
    source: str = "file"
    _eta_cache: dict[int, RealValue] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.values:
            euler = mpf_from_digits(
                "0.57721566490153286060651209008240243104215933593992"
            )
            v0 = self.values[0]
            check = min(v0.certified_digits or 15, 50)
            if abs(v0.value - euler) > mp.mpf(10) ** (-(check - 2)):
                raise ValueError(
                    "Stieltjes store rejected: γ_0 disagrees with Euler's constant"
                )

    def __len__(self) -> int:
        return len(self.values)


def load_stieltjes(path) -> StieltjesStore:
    f = dataio.read_indexed_file(path)
    prec = f.precision_digits or 50
    values = []
    for expect, (idx, digits) in enumerate(sorted(f.entries)):
        if idx != expect:
            raise ValueError("stieltjes file indices must be 0,1,2,...")
        values.append(RealValue(mpf_from_digits(digits), certified_digits=prec))
    return StieltjesStore(values=values, source="file")


@functools.lru_cache(maxsize=1)
def default_stieltjes_store() -> StieltjesStore:
    return load_stieltjes(dataio.data_path("stieltjes_110d.txt"))


_STIELTJES_FALLBACK_CAP = 60


def stieltjes(n: int, store: StieltjesStore | None, ctx: PrecisionContext) -> RealValue:
    """γ_n from the store; computed fallback (slow) for small n."""
    if n < 0:
        raise ValueError("n must be >= 0")
    if store is not None and n < len(store):
        return store.values[n]
    if n > _STIELTJES_FALLBACK_CAP:
        raise InsufficientPrecisionError(
            "γ_%d not in store and beyond the computed-fallback cap" % n
        )

    def regzeta(s):
        return mp.zeta(s) - 1 / (s - 1)

    d = derivative_num(regzeta, 1, n, ctx, radius=2.5, exclude_center=True)
    sign = -1 if n % 2 else 1
    with workdps(ctx.internal_digits):
        return RealValue(sign * d.value, certified_digits=d.certified_digits)


def eta_coeff(n: int, store: StieltjesStore, ctx: PrecisionContext) -> RealValue:
    """η_n, the Taylor coefficients of -ζ'/ζ(s) - 1/(s-1) about s = 1.

    Computed from the Stieltjes constants by the standard recurrence
    η_n = (-1)^(n+1) [ (n+1)/n! γ_n
                       + sum_{k=0}^{n-1} (-1)^(k-1)/(n-k-1)! η_k γ_{n-k-1} ].
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n >= len(store):
        raise InsufficientPrecisionError(
            "eta_coeff(%d) needs γ_0..γ_%d in the store" % (n, n)
        )
    if n in store._eta_cache:
        return store._eta_cache[n]
    prec = min(v.certified_digits for v in store.values[: n + 1]) or 50
    with workdps(prec + 15):
        for i in range(n + 1):
            if i in store._eta_cache:
                continue
            g = [v.value for v in store.values[: i + 1]]
            acc = mp.mpf(i + 1) / mp.factorial(i) * g[i]
            for k in range(i):
                sign = -1 if (k - 1) % 2 else 1
                acc += (
                    sign
                    * store._eta_cache[k].value
                    * g[i - k - 1]
                    / mp.factorial(i - k - 1)
                )
            if i % 2 == 0:
                acc = -acc
            store._eta_cache[i] = RealValue(acc, certified_digits=prec)
    return store._eta_cache[n]


# ---------------------------------------------------------------------------
# Truncated power-series helpers and the batch Euler-Maclaurin engine
# ---------------------------------------------------------------------------


def poly_mul_trunc(a: Sequence, b: Sequence, count: int) -> list:
    """Product of two truncated power series, keeping ``count`` coefficients."""
    out = [mp.mpf(0)] * count
    for i, ai in enumerate(a[:count]):
        if not ai:
            continue
        top = min(count - i, len(b))
        for j in range(top):
            out[i + j] += ai * b[j]
    return out


def poly_recip_trunc(f: Sequence, count: int) -> list:
    """Reciprocal of a truncated power series with f[0] != 0."""
    f0 = f[0]
    if not f0:
        raise ValueError("series reciprocal requires nonzero constant term")
    out = [1 / f0] + [mp.mpf(0)] * (count - 1)
    for k in range(1, count):
        acc = mp.mpf(0)
        for j in range(1, min(k, len(f) - 1) + 1):
            acc += f[j] * out[k - j]
        out[k] = -acc / f0
    return out


def poly_log_trunc(f: Sequence, count: int) -> list:
    """log of a truncated power series with f[0] > 0."""
    f0 = f[0]
    if f0 <= 0:
        raise ValueError("series log requires positive constant term")
    out = [mp.log(f0)] + [mp.mpf(0)] * (count - 1)
    fn = [c / f0 for c in f]
    for k in range(1, count):
        acc = fn[k] * k if k < len(fn) else mp.mpf(0)
        for j in range(1, k):
            if j < len(out) and k - j < len(fn):
                acc -= j * out[j] * fn[k - j]
        out[k] = acc / k
    return out


def zeta_taylor(s0, k_max: int, dps: int, offset=1) -> list:
    """Taylor coefficients ζ^(k)(s0, offset)/k! for k = 0..k_max, in one pass.

    Batch Euler-Maclaurin for the Hurwitz zeta sum over (n + offset)^{-s}
    (offset = 1 gives the Riemann zeta): the main sum contributes
    x^{-s0}(-ln x)^k/k!, the pole and Bernoulli-tail parts are expanded
    as truncated power series in u = s - s0 and convolved with
    e^{-u ln M} at the end (M the boundary abscissa).  Works at ``dps``
    decimal digits; s0 must not be 1 and offset must be positive.
    """
    K = k_max + 1
    with workdps(dps + 10):
        s0 = mp.mpf(s0)
        offset = mp.mpf(offset)
        if s0 == 1:
            raise PoleError("zeta_taylor centered at the pole s=1")
        if offset <= 0:
            raise ValueError("zeta_taylor requires offset > 0")
        N = int(k_max + 1.2 * dps) + 10
        # main sum: for each x = n + offset, x^{-s0} * (-ln x)^k / k!
        coeffs = [mp.mpf(0)] * K
        terms: list[list] = [[] for _ in range(K)]
        for n in range(N - 1):
            x = n + offset
            base = mp.power(x, -s0)
            ln = mp.log(x)
            pw = base
            terms[0].append(pw)
            cut = mp.mpf(10) ** (-(dps + 10))
            for k in range(1, K):
                pw = pw * (-ln) / k
                # (-ln n)^k/k! peaks near k = ln n; only break past the peak
                if k > ln and abs(pw) < cut:
                    break
                terms[k].append(pw)
        for k in range(K):
            coeffs[k] = mp.fsum(terms[k])

        M = (N - 1) + offset
        lnN = mp.log(M)
        # bracket = M^{1-s0}/(s0-1+u)  +  M^{-s0}/2  +  M^{-s0} * tail(u)
        inv = [mp.mpf(0)] * K
        d = s0 - 1
        inv[0] = 1 / d
        for k in range(1, K):
            inv[k] = -inv[k - 1] / d
        NB = mp.power(M, 1 - s0)
        bracket = [NB * c for c in inv]
        Ns = mp.power(M, -s0)
        bracket[0] += Ns / 2

        # Bernoulli tail: sum_j B_2j/(2j)! g_j(u) / N, with
        # g_1 = (s0+u), g_{j+1} = g_j (s0+2j-1+u)(s0+2j+u)/N^2
        eps = mp.mpf(10) ** (-(dps + 10))
        g = [mp.mpf(0)] * K
        g[0] = s0
        if K > 1:
            g[1] = mp.mpf(1)
        j = 1
        N2 = M**2
        tail = [mp.mpf(0)] * K
        while True:
            b = bernoulli_number(2 * j)
            scale = mp.mpf(b.numerator) / b.denominator / mp.factorial(2 * j)
            term0 = abs(scale * g[0] * Ns / M)
            for k in range(K):
                tail[k] += scale * g[k]
            if term0 < eps and j > 2:
                break
            if j > 4 * dps:
                break
            # multiply g by (a1 + u)(a2 + u) / N^2
            a1 = s0 + 2 * j - 1
            a2 = s0 + 2 * j
            c0 = a1 * a2
            c1 = a1 + a2
            new = [mp.mpf(0)] * K
            for k in range(K - 1, -1, -1):
                acc = c0 * g[k]
                if k >= 1:
                    acc += c1 * g[k - 1]
                if k >= 2:
                    acc += g[k - 2]
                new[k] = acc / N2
            g = new
            j += 1
        for k in range(K):
            bracket[k] += Ns / M * tail[k]

        # convolve bracket with e^{-u ln M}
        expf = [mp.mpf(1)]
        for k in range(1, K):
            expf.append(expf[-1] * (-lnN) / k)
        extra = poly_mul_trunc(bracket, expf, K)
        return [coeffs[k] + extra[k] for k in range(K)]
