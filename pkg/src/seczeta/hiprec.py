"""Arbitrary-precision context plus the two generic numeric engines.

Everything downstream runs on three primitives defined here:

* a precision context (decimal working digits + guard digits) that makes
  every computation deterministic and reproducible digit-for-digit,
* high-order numerical differentiation on symmetric stencils with exact
  rational weights and oversampled internal precision,
* double-exponential quadrature (tanh-sinh on finite intervals, exp-sinh
  on semi-infinite ones) with level doubling until two successive levels
  agree to the target digits.

The differentiation weights are generated by the standard recurrence for
finite-difference coefficients on arbitrary nodes (Fornberg's algorithm)
carried out in exact ``fractions.Fraction`` arithmetic, so the only
numerical error sources are the Taylor truncation of the stencil and the
rounding of the weighted sum, both of which are controlled explicitly.
"""

from __future__ import annotations

import functools
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Sequence

import mpmath as mp

__all__ = [
    "PrecisionContext",
    "RealValue",
    "PoleError",
    "NonConvergenceError",
    "StepUnderflowError",
    "InsufficientPrecisionError",
    "make_context",
    "workdps",
    "mpf_from_digits",
    "digit_string",
    "significant_digit_count",
    "matched_significant_digits",
    "matched_fractional_digits",
    "derivative_num",
    "derivative_grid",
    "integrate_finite",
    "integrate_semi_infinite",
    "integrate_finite_batch",
    "integrate_semi_infinite_batch",
    "de_nodes_finite",
]

# Internal precision is never allowed to exceed this multiple of the
# working precision; past that point the caller's request is considered
# numerically hopeless and we error out instead of silently degrading.
HARD_CAP_FACTOR = 20


class PoleError(ArithmeticError):
    """Evaluation requested exactly at a pole."""


class NonConvergenceError(ArithmeticError):
    """Iterative refinement failed to reach the requested agreement."""


class StepUnderflowError(ArithmeticError):
    """Differentiation would need internal precision past the hard cap."""


class InsufficientPrecisionError(ArithmeticError):
    """Inputs carry too few certified digits for the requested output."""


@dataclass(frozen=True)
class PrecisionContext:
    """Decimal precision bookkeeping threaded through every operation."""

    working_digits: int
    guard_digits: int
    quadrature_target_digits: int
    diff_oversample_factor: float = 2.0

    def __post_init__(self) -> None:
        if self.working_digits < 30:
            raise ValueError(
                "working_digits must be >= 30 (got %d)" % self.working_digits
            )
        if self.guard_digits < 10:
            raise ValueError("guard_digits must be >= 10")
        if self.diff_oversample_factor < 2:
            raise ValueError("diff_oversample_factor must be >= 2")

    @property
    def internal_digits(self) -> int:
        return self.working_digits + self.guard_digits

    @property
    def hard_cap(self) -> int:
        return HARD_CAP_FACTOR * self.working_digits


@dataclass(frozen=True)
class RealValue:
    """An arbitrary-precision real together with a trusted digit count.

    ``certified_digits`` is heuristic bookkeeping (agreement between
    refinement levels / truncation estimates), not a rigorous bound;
    0 means unknown.
    """

    value: mp.mpf
    certified_digits: int = 0

    def __float__(self) -> float:
        return float(self.value)

    def __repr__(self) -> str:  # keep reprs short in test diffs
        return "RealValue(%s, certified=%d)" % (
            mp.nstr(self.value, 20),
            self.certified_digits,
        )


def make_context(working_digits: int) -> PrecisionContext:
    """Build a context with defaulted guard digits (max(10, working/10))."""
    if working_digits < 30:
        raise ValueError("working_digits must be >= 30")
    guard = max(10, working_digits // 10)
    return PrecisionContext(
        working_digits=working_digits,
        guard_digits=guard,
        quadrature_target_digits=working_digits,
    )


@contextmanager
def workdps(digits: int) -> Iterator[None]:
    """Temporarily set mpmath decimal precision."""
    old = mp.mp.dps
    mp.mp.dps = int(digits)
    try:
        yield
    finally:
        mp.mp.dps = old


def mpf_from_digits(text: str, extra_dps: int = 10) -> mp.mpf:
    """Parse a decimal digit string at precision covering all its digits."""
    cleaned = text.strip().replace("×10^", "e").replace("^", "")
    ndig = sum(c.isdigit() for c in cleaned)
    with workdps(ndig + extra_dps):
        return mp.mpf(cleaned)


def digit_string(x: mp.mpf, digits: int) -> str:
    """Fixed-point rendering; scientific only outside [1e-8, 1e8)."""
    if mp.isnan(x):
        return "nan"
    if x == 0:
        return "0." + "0" * digits
    ax = abs(x)
    with workdps(digits + 15):
        if ax < mp.mpf("1e-8") or ax >= mp.mpf("1e8"):
            return mp.nstr(
                x, digits, min_fixed=1, max_fixed=0, strip_zeros=False
            )
        return mp.nstr(x, digits, min_fixed=-mp.inf, max_fixed=mp.inf,
                       strip_zeros=False)


def significant_digit_count(reference: str) -> int:
    """Number of significant digits in a decimal digit string."""
    mantissa = reference.strip().split("e")[0].split("E")[0].split("×")[0]
    digits = [c for c in mantissa if c.isdigit()]
    while digits and digits[0] == "0":
        digits.pop(0)
    return len(digits)


def matched_significant_digits(x: mp.mpf, reference: str) -> int:
    """Count leading significant digits of ``reference`` matched by ``x``.

    A digit counts as matched when |x - ref| is below one unit in that
    digit's place (tolerant of truncated-vs-rounded published strings).
    """
    ref = mpf_from_digits(reference)
    ndig = significant_digit_count(reference)
    if ref == 0:
        return ndig if x == 0 else 0
    with workdps(ndig + 25):
        diff = abs(mp.mpf(x) - ref)
        if diff == 0:
            return ndig
        lead = mp.floor(mp.log10(abs(ref)))
        # k digits matched  <=>  diff < 10^(lead - k + 1)
        k = int(mp.floor(lead - mp.log10(diff))) + 1
        return max(0, min(ndig, k))


def matched_fractional_digits(x: mp.mpf, reference: str) -> int:
    """Digits after the decimal point matched against a reference string.

    Returns 0 when the integer parts differ.  Comparison is textual on
    the truncated decimal expansions, matching the convention of digit
    tables that underline correct decimals.
    """
    ref = mpf_from_digits(reference)
    mantissa = reference.strip().split("e")[0].split("E")[0].split("×")[0]
    frac_limit = len(mantissa.split(".")[1]) if "." in mantissa else 0
    with workdps(max(60, frac_limit + 25)):
        xs = mp.mpf(x)
        if mp.sign(xs) != mp.sign(ref):
            return 0
        xs, ref = abs(xs), abs(ref)
        if int(mp.floor(xs)) != int(mp.floor(ref)):
            return 0
        fx = xs - mp.floor(xs)
        fr = ref - mp.floor(ref)
        count = 0
        for _ in range(frac_limit):
            fx *= 10
            fr *= 10
            dx, dr = int(mp.floor(fx)), int(mp.floor(fr))
            if dx != dr:
                break
            count += 1
            fx -= dx
            fr -= dr
        return count


# ---------------------------------------------------------------------------
# Numerical differentiation
# ---------------------------------------------------------------------------


@functools.lru_cache(maxsize=None)
def _stencil_weights(nodes: tuple[Fraction, ...], m_max: int):
    """Exact finite-difference weights for derivatives 0..m_max.

    Implements the classic one-pass recurrence for interpolatory
    differentiation weights on arbitrary nodes (expansion point 0).
    Returns w[m][j] with  f^(m)(0) ~ sum_j w[m][j] f(node_j).
    """
    n = len(nodes)
    # d[k][j] holds the order-k weight of node j using nodes[0..nu]
    d = [[Fraction(0)] * n for _ in range(m_max + 1)]
    d[0][0] = Fraction(1)
    c1 = Fraction(1)
    for nu in range(1, n):
        c2 = Fraction(1)
        new = [row[:] for row in d]
        for j in range(nu):
            c3 = nodes[nu] - nodes[j]
            c2 *= c3
            for k in range(min(nu, m_max), -1, -1):
                prev = k * d[k - 1][j] if k else Fraction(0)
                new[k][j] = (nodes[nu] * d[k][j] - prev) / c3
        for k in range(min(nu, m_max), -1, -1):
            prev = k * d[k - 1][nu - 1] if k else Fraction(0)
            new[k][nu] = (c1 / c2) * (prev - nodes[nu - 1] * d[k][nu - 1])
        d = new
        c1 = c2
    return d


def _plan_stencil(m: int, target_digits: int, radius: float,
                  exclude_center: bool) -> tuple[list[Fraction], int, int]:
    """Choose nodes and a step exponent for an order-m stencil.

    Returns (integer-ish node offsets, q, p) with step h = radius*10^-q
    and p nodes.  Sized so the interpolation truncation falls below
    10^-target even after division by h^m.
    """
    q = 3
    while True:
        # need roughly p*log10(2/(p*10^-q)) >= target + m*q + margin
        need = target_digits + m * q + 15
        p = max(m + 3, 5)
        while True:
            width_term = q + mp.log10(2.0 / p)
            if width_term <= 0.4:  # stencil too wide for the radius
                p = None
                break
            if p * width_term >= need:
                break
            p += 2
            if p > 4000:
                p = None
                break
        if p is not None:
            break
        q += 1
        if q > 12:
            raise StepUnderflowError(
                "no admissible stencil for m=%d at %d digits" % (m, target_digits)
            )
    if exclude_center:
        if p % 2 == 1:
            p += 1
        half = p // 2
        nodes = [Fraction(2 * k + 1, 2) for k in range(-half, half)]
    else:
        if p % 2 == 0:
            p += 1
        half = p // 2
        nodes = [Fraction(k) for k in range(-half, half + 1)]
    return nodes, q, len(nodes)


def derivative_grid(
    f: Callable[[mp.mpf], mp.mpf],
    x0,
    m_max: int,
    ctx: PrecisionContext,
    radius: float = 1.0,
    exclude_center: bool = False,
    oversample: float | None = None,
) -> list[RealValue]:
    """All derivatives f^(0..m_max)(x0) from a single shared stencil.

    ``radius`` is the distance to the nearest singularity of f (used to
    scale the step); ``exclude_center`` switches to a staggered grid of
    half-integer offsets so f is never called at x0 itself.
    """
    target = ctx.working_digits
    over = oversample if oversample is not None else ctx.diff_oversample_factor
    nodes, q, p = _plan_stencil(m_max, target, radius, exclude_center)
    weights = _stencil_weights(tuple(nodes), m_max)
    # rounding amplification: sum of |weights| for the worst order
    wsum = max(sum(abs(w) for w in weights[m]) for m in range(m_max + 1))
    amp = int(mp.ceil(mp.log10(float(wsum.numerator) /
                               float(wsum.denominator)))) if wsum else 0
    rscale = -int(mp.floor(mp.log10(mp.mpf(radius)))) if radius < 1 else 0
    internal = int(target * (over - 1)) + target + m_max * (q + rscale) + amp + 15
    if internal > ctx.hard_cap:
        raise StepUnderflowError(
            "internal precision %d exceeds hard cap %d" % (internal, ctx.hard_cap)
        )
    with workdps(internal):
        h = mp.mpf(radius) * mp.mpf(10) ** (-q)
        xs = [mp.mpf(x0) + mp.mpf(n.numerator) / n.denominator * h
              for n in nodes]
        fs = [mp.mpf(f(x)) for x in xs]
        out = []
        for m in range(m_max + 1):
            terms = [
                mp.mpf(w.numerator) / w.denominator * fv
                for w, fv in zip(weights[m], fs)
                if w
            ]
            val = mp.fsum(terms) / h**m
            out.append(val)
    with workdps(ctx.internal_digits):
        return [RealValue(+v, certified_digits=target) for v in out]


def derivative_num(
    f: Callable[[mp.mpf], mp.mpf],
    x0,
    m: int,
    ctx: PrecisionContext,
    radius: float = 1.0,
    exclude_center: bool = False,
) -> RealValue:
    """m-th derivative of f at x0 on a symmetric oversampled stencil."""
    if m < 0:
        raise ValueError("derivative order must be >= 0")
    if m == 0 and not exclude_center:
        with workdps(ctx.internal_digits):
            return RealValue(mp.mpf(f(mp.mpf(x0))),
                             certified_digits=ctx.working_digits)
    return derivative_grid(f, x0, m, ctx, radius=radius,
                           exclude_center=exclude_center)[m]


# ---------------------------------------------------------------------------
# Double-exponential quadrature
# ---------------------------------------------------------------------------


def de_nodes_finite(level: int, dps: int) -> list[tuple[mp.mpf, mp.mpf, mp.mpf]]:
    """tanh-sinh nodes for (-1, 1) at the given doubling level.

    Yields (offset_from_endpoint, weight, sign) triples for t = sign *
    (1 - offset); offsets are computed directly so endpoint clustering
    keeps full relative precision.  Level L uses step h = 2^-L and, for
    L > 0, only the odd multiples (the even ones belong to level L-1).
    """
    out = []
    with workdps(dps + 10):
        h = mp.mpf(2) ** (-level)
        pi2 = mp.pi / 2
        # run nodes until the endpoint offset is ~eps^2.5, so that even
        # t^-p endpoint singularities (p < 1) are resolved past target
        stop_exp = int(2.5 * (dps + 10))
        kmax = int(mp.ceil(mp.asinh(mp.log(mp.mpf(10) ** stop_exp * 4)
                                    / pi2) / h)) + 1
        ks = range(0, kmax + 1) if level == 0 else range(1, kmax + 1, 2)
        cutoff = mp.mpf(10) ** (-stop_exp)
        for k in ks:
            u = h * k
            su = pi2 * mp.sinh(u)
            # 1 - tanh(su) = 2 / (1 + e^{2 su}), accurate near the endpoint
            off = 2 / (1 + mp.exp(2 * su))
            w = h * pi2 * mp.cosh(u) / mp.cosh(su) ** 2
            if off < cutoff:
                break
            out.append((off, w, mp.mpf(1)))
            if k > 0:
                out.append((off, w, mp.mpf(-1)))
    return out


def _de_sum_finite(f, lo, hi, level, dps):
    with workdps(dps):
        lo = mp.mpf(lo)
        hi = mp.mpf(hi)
        half = (hi - lo) / 2
        terms = []
        for off, w, sign in de_nodes_finite(level, dps):
            x = lo + half * off if sign < 0 else hi - half * off
            terms.append(w * mp.mpf(f(x)))
        return half * mp.fsum(terms)


def _de_sum_semi_infinite(f, lo, level, dps):
    # exp-sinh: x = lo + exp(pi/2 sinh u)
    with workdps(dps):
        lo = mp.mpf(lo)
        h = mp.mpf(2) ** (-level)
        pi2 = mp.pi / 2
        eps_log = mp.log(mp.mpf(10)) * int(2.5 * (dps + 10))
        kmax = int(mp.ceil(mp.asinh(eps_log / pi2) / h)) + 2
        terms = []
        for k in range(-kmax, kmax + 1):
            if level > 0 and k % 2 == 0:
                continue
            u = h * k
            ex = mp.exp(pi2 * mp.sinh(u))
            w = h * pi2 * mp.cosh(u) * ex
            fv = mp.mpf(f(lo + ex))
            if fv:
                terms.append(w * fv)
        return mp.fsum(terms)


def _de_integrate(summer, ctx: PrecisionContext, max_level: int = 12) -> RealValue:
    target = ctx.quadrature_target_digits
    dps = target + ctx.guard_digits + 10
    tol = mp.mpf(10) ** (-target)
    with workdps(dps):
        total = summer(0, dps)
        prev = None
        for level in range(1, max_level + 1):
            # level-L sums carry their own step factor h_L = h_{L-1}/2,
            # so composition is I_L = I_{L-1}/2 + S_L
            total = total / 2 + summer(level, dps)
            if prev is not None:
                err = abs(total - prev)
                scale = max(abs(total), mp.mpf(1))
                if err <= tol * scale:
                    certified = target
                    if err > 0:
                        certified = min(
                            target, int(-mp.log10(err / scale))
                        )
                    return RealValue(+total, certified_digits=certified)
            prev = total
    raise NonConvergenceError(
        "quadrature failed to reach %d digits after %d levels" % (target, max_level)
    )


def integrate_finite(f, lo, hi, ctx: PrecisionContext) -> RealValue:
    """∫_lo^hi f via tanh-sinh; integrable endpoint singularities allowed."""
    if not lo < hi:
        raise ValueError("empty or inverted interval")
    return _de_integrate(lambda lv, dps: _de_sum_finite(f, lo, hi, lv, dps), ctx)


def integrate_semi_infinite(f, lo, ctx: PrecisionContext) -> RealValue:
    """∫_lo^∞ f via exp-sinh; f must decay like t^-p (p>1) or faster."""
    return _de_integrate(lambda lv, dps: _de_sum_semi_infinite(f, lo, lv, dps), ctx)


def _de_sum_finite_batch(f, lo, hi, count, level, dps):
    with workdps(dps):
        lo = mp.mpf(lo)
        hi = mp.mpf(hi)
        half = (hi - lo) / 2
        terms = [[] for _ in range(count)]
        for off, w, sign in de_nodes_finite(level, dps):
            x = lo + half * off if sign < 0 else hi - half * off
            for i, v in enumerate(f(x)):
                terms[i].append(w * v)
        return [half * mp.fsum(t) for t in terms]


def _de_sum_semi_infinite_batch(f, lo, count, level, dps):
    with workdps(dps):
        lo = mp.mpf(lo)
        h = mp.mpf(2) ** (-level)
        pi2 = mp.pi / 2
        eps_log = mp.log(mp.mpf(10)) * int(2.5 * (dps + 10))
        kmax = int(mp.ceil(mp.asinh(eps_log / pi2) / h)) + 2
        terms = [[] for _ in range(count)]
        for k in range(-kmax, kmax + 1):
            if level > 0 and k % 2 == 0:
                continue
            u = h * k
            ex = mp.exp(pi2 * mp.sinh(u))
            w = h * pi2 * mp.cosh(u) * ex
            for i, v in enumerate(f(lo + ex)):
                if v:
                    terms[i].append(w * v)
        return [mp.fsum(t) for t in terms]


def _de_integrate_batch(summer, count, ctx: PrecisionContext,
                        max_level: int = 12) -> list[RealValue]:
    """Level-doubling driver for a vector of simultaneous integrals.

    The integrand is evaluated once per node and accumulated into
    ``count`` components; convergence requires every component to settle
    (relative to its own scale, floored at 1) so shared-node batches pay
    one quadrature for the whole family.
    """
    target = ctx.quadrature_target_digits
    dps = target + ctx.guard_digits + 10
    tol = mp.mpf(10) ** (-target)
    with workdps(dps):
        totals = summer(0, dps)
        prev = None
        for level in range(1, max_level + 1):
            step = summer(level, dps)
            totals = [t / 2 + s for t, s in zip(totals, step)]
            if prev is not None:
                ok = True
                certs = []
                for t, p in zip(totals, prev):
                    err = abs(t - p)
                    scale = max(abs(t), mp.mpf(1))
                    if err > tol * scale:
                        ok = False
                        break
                    cert = target
                    if err > 0:
                        cert = min(target, int(-mp.log10(err / scale)))
                    certs.append(cert)
                if ok:
                    return [
                        RealValue(+t, certified_digits=c)
                        for t, c in zip(totals, certs)
                    ]
            prev = totals
    raise NonConvergenceError(
        "batch quadrature failed to reach %d digits after %d levels"
        % (target, max_level)
    )


def integrate_finite_batch(f, lo, hi, count: int,
                           ctx: PrecisionContext) -> list[RealValue]:
    """∫_lo^hi of a vector integrand f(x) -> sequence of ``count`` values."""
    if not lo < hi:
        raise ValueError("empty or inverted interval")
    return _de_integrate_batch(
        lambda lv, dps: _de_sum_finite_batch(f, lo, hi, count, lv, dps), count, ctx
    )


def integrate_semi_infinite_batch(f, lo, count: int,
                                  ctx: PrecisionContext) -> list[RealValue]:
    """∫_lo^∞ of a vector integrand; every component must decay like t^-p, p>1."""
    return _de_integrate_batch(
        lambda lv, dps: _de_sum_semi_infinite_batch(f, lo, count, lv, dps), count, ctx
    )
