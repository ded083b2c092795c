"""Taylor/Laurent machinery for the secondary zeta function.

Builds the coefficient families used for series continuation:

* Zderiv — derivatives Z^(m)(a), from the zero sum (slowly convergent)
  or from the regularized continuation (fast, the default);
* A — Taylor coefficients of the pole-cancelled product (s-1)^2 Z(s);
* B — Taylor coefficients of the entire function
  (s-1)^2 Z(s) / Gamma((s+1)/2), which continues past every pole;
* C — Laurent coefficients of the regular part of Z at the double pole
  s = 1, whose constant term carries the harmonic constant
  H = C_0 - log^2(2pi)/(4pi).

High-order tables exploit that the B-generator is entire and O(1): what
series reconstruction needs is *absolute* coefficient accuracy of order
10^-d * n!, so a single shared stencil at moderate nominal target digits
delivers every order at far better absolute accuracy than its nominal
certification suggests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath as mp

from .adr import ZerosDatabase, Z_adr, adr_params_for
from .hiprec import (
    NonConvergenceError,
    PoleError,
    PrecisionContext,
    RealValue,
    derivative_grid,
    workdps,
)

__all__ = [
    "CoefficientTable",
    "make_adr_evaluator",
    "Z_derivs_from_zeros",
    "Z_derivs_adr",
    "A_coeffs",
    "A_coeffs_from_B",
    "B_coeffs",
    "Z_from_A",
    "Z_from_B",
    "laurent_C",
    "harmonic_H",
    "H_partial_from_zeros",
]

_KINDS = ("Zderiv", "A", "B", "C")
_PROVENANCES = ("adr", "zeros", "mellin", "file")


def _table_dps(tbl) -> int:
    """Working precision that preserves a table's best certification."""
    best = max((v.certified_digits for v in tbl.values), default=30)
    return max(mp.mp.dps, best + 15, 30)


@dataclass
class CoefficientTable:
    """Ordered derivative/Taylor coefficients of one family at one center."""

    kind: str
    center: object
    count: int
    values: list[RealValue] = field(repr=False)
    provenance: str = "adr"

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError("unknown table kind %r" % self.kind)
        if self.provenance not in _PROVENANCES:
            raise ValueError("unknown provenance %r" % self.provenance)
        if self.count != len(self.values):
            raise ValueError("count does not match number of values")
        if self.kind == "C" and mp.mpf(self.center) != 1:
            raise ValueError("C tables are centered at the pole s=1")

    def value(self, n: int) -> RealValue:
        return self.values[n]


# ---------------------------------------------------------------------------
# Evaluator plumbing
# ---------------------------------------------------------------------------


def make_adr_evaluator(zeros: ZerosDatabase, ctx: PrecisionContext):
    """Z(s) -> mpf callable with truncation knobs auto-tuned to the
    ambient precision (so it stays accurate inside differentiation
    stencils, which raise the ambient precision around each node)."""
    cache: dict[int, object] = {}

    def evaluate(s):
        dps = max(mp.mp.dps, ctx.internal_digits)
        bucket = -(-dps // 20) * 20
        if bucket not in cache:
            cache[bucket] = adr_params_for(bucket, zeros)
        return Z_adr(s, cache[bucket], zeros, ctx).value

    return evaluate


# ---------------------------------------------------------------------------
# Z-derivative tables
# ---------------------------------------------------------------------------


def Z_derivs_from_zeros(a, m_max: int, zeros: ZerosDatabase) -> CoefficientTable:
    """values[m] = Z^(m)(a) = (-1)^m sum_n log^m(t_n) / t_n^a, truncated.

    Only the leading digits are right at desk scale — the tail falls off
    like t_K^{1-a}; each entry's certification carries the density-based
    tail estimate.
    """
    with workdps(max(mp.mp.dps, zeros.min_certified_digits)):
        a = mp.mpf(a)
        if not a > 1:
            raise ValueError("the defining zero sum requires a > 1")
        ts = zeros.ordinates()
        tK = ts[-1]
        dens = mp.log(tK / (2 * mp.pi)) / (2 * mp.pi)
        values = []
        logs = [mp.log(t) for t in ts]
        powers = [mp.power(t, -a) for t in ts]
        for m in range(m_max + 1):
            total = mp.fsum(lg**m * pw for lg, pw in zip(logs, powers))
            if m % 2 == 1:
                total = -total
            est = dens * mp.log(tK) ** m * mp.power(tK, 1 - a) / (a - 1)
            if est >= abs(total) or total == 0:
                cert = 0
            else:
                cert = max(0, int(-mp.log10(est / abs(total))))
            values.append(RealValue(total, certified_digits=cert))
    return CoefficientTable(
        kind="Zderiv", center=a, count=m_max + 1, values=values,
        provenance="zeros",
    )


def Z_derivs_adr(
    a, m_max: int, zeros: ZerosDatabase, ctx: PrecisionContext,
    radius: float | None = None,
) -> CoefficientTable:
    """Z^(m)(a), m = 0..m_max, by stencil differentiation of the
    regularized continuation (one shared stencil)."""
    ev = make_adr_evaluator(zeros, ctx)
    with workdps(ctx.internal_digits):
        a = mp.mpf(a)
        if radius is None:
            # poles sit at every integer <= 1
            if a > 2:
                radius = 1.0
            else:
                gap = abs(a - mp.nint(a))
                radius = float(gap) if gap > 0.25 else 1.0
        exclude = bool(mp.isint(a) and a <= 1)
    values = derivative_grid(
        ev, a, m_max, ctx, radius=radius, exclude_center=exclude
    )
    return CoefficientTable(
        kind="Zderiv", center=a, count=m_max + 1, values=values,
        provenance="adr",
    )


# ---------------------------------------------------------------------------
# A and B coefficient tables
# ---------------------------------------------------------------------------


def A_coeffs(a, m_max: int, zd: CoefficientTable) -> CoefficientTable:
    """A^(m)(a), the derivatives of (s-1)^2 Z(s), from a Zderiv table:

        A^(m) = m(m-1) Z^(m-2) + 2m(a-1) Z^(m-1) + (a-1)^2 Z^(m).
    """
    if zd.kind != "Zderiv":
        raise ValueError("A_coeffs requires a Zderiv table")
    with workdps(max(mp.mp.dps, 30)):
        if mp.mpf(zd.center) != mp.mpf(a):
            raise ValueError("Zderiv table center does not match a")
    if zd.count < m_max + 1:
        raise ValueError("Zderiv table too short for m_max=%d" % m_max)
    with workdps(_table_dps(zd)):
        a = mp.mpf(a)
        values = []
        for m in range(m_max + 1):
            acc = (a - 1) ** 2 * zd.values[m].value
            cert = zd.values[m].certified_digits
            if m >= 1:
                acc += 2 * m * (a - 1) * zd.values[m - 1].value
                cert = min(cert, zd.values[m - 1].certified_digits)
            if m >= 2:
                acc += m * (m - 1) * zd.values[m - 2].value
                cert = min(cert, zd.values[m - 2].certified_digits)
            values.append(RealValue(acc, certified_digits=cert))
    return CoefficientTable(
        kind="A", center=zd.center, count=m_max + 1, values=values,
        provenance=zd.provenance,
    )


def _rgamma_half_derivs(a, m_max: int, ctx: PrecisionContext) -> list[RealValue]:
    """Derivatives of 1/Gamma((s+1)/2) at a (entire, cheap)."""
    return derivative_grid(
        lambda x: mp.rgamma((x + 1) / 2), a, m_max, ctx, radius=1.0
    )


def _gamma_half_derivs(a, m_max: int, ctx: PrecisionContext) -> list[RealValue]:
    """Derivatives of Gamma((s+1)/2) at a (poles at negative odds)."""
    with workdps(ctx.internal_digits):
        a = mp.mpf(a)
        gap = min(abs(a + 1), abs(a + 3))
        radius = float(min(mp.mpf(1), gap / 2)) if gap < 2 else 1.0
    return derivative_grid(
        lambda x: mp.gamma((x + 1) / 2), a, m_max, ctx, radius=radius
    )


def B_coeffs(a, m_max: int, source, ctx: PrecisionContext,
             radius: float = 1.0, oversample: int | None = None) -> CoefficientTable:
    """B^(n)(a), derivatives of the entire function
    (s-1)^2 Z(s) / Gamma((s+1)/2).

    Two routes: from an A-table by the Leibniz rule against numerically
    differentiated 1/Gamma((s+1)/2), or — given a Z evaluator — by one
    shared stencil directly on the entire product (preferred for high
    orders: the product is O(1), so absolute accuracy survives).
    """
    if isinstance(source, CoefficientTable):
        if source.kind != "A":
            raise ValueError("table route requires an A table")
        with workdps(max(mp.mp.dps, 30)):
            if mp.mpf(source.center) != mp.mpf(a):
                raise ValueError("A table center does not match a")
        if source.count < m_max + 1:
            raise ValueError("A table too short")
        g = _rgamma_half_derivs(a, m_max, ctx)
        with workdps(ctx.internal_digits):
            values = []
            for n in range(m_max + 1):
                acc = mp.fsum(
                    mp.mpf(math.comb(n, k)) * source.values[k].value
                    * g[n - k].value
                    for k in range(n + 1)
                )
                cert = min(
                    [source.values[k].certified_digits for k in range(n + 1)]
                    + [g[k].certified_digits for k in range(n + 1)]
                )
                values.append(RealValue(acc, certified_digits=cert))
        return CoefficientTable(
            kind="B", center=source.center, count=m_max + 1, values=values,
            provenance=source.provenance,
        )

    evaluator = source

    def entire_product(s):
        return (s - 1) ** 2 * evaluator(s) * mp.rgamma((s + 1) / 2)

    with workdps(ctx.internal_digits):
        av = mp.mpf(a)
        exclude = bool(mp.isint(av) and av <= 1)
    values = derivative_grid(
        entire_product, a, m_max, ctx, radius=radius, exclude_center=exclude,
        oversample=oversample,
    )
    return CoefficientTable(
        kind="B", center=a, count=m_max + 1, values=values, provenance="adr"
    )


def A_coeffs_from_B(btbl: CoefficientTable, ctx: PrecisionContext) -> CoefficientTable:
    """A-table recovered from a B-table by the inverse Leibniz product
    with Gamma((s+1)/2) — lets one high-order entire-function stencil
    feed both series."""
    if btbl.kind != "B":
        raise ValueError("requires a B table")
    m_max = btbl.count - 1
    g = _gamma_half_derivs(btbl.center, m_max, ctx)
    with workdps(ctx.internal_digits):
        values = []
        for n in range(m_max + 1):
            acc = mp.fsum(
                mp.mpf(math.comb(n, k)) * btbl.values[k].value * g[n - k].value
                for k in range(n + 1)
            )
            cert = min(
                [btbl.values[k].certified_digits for k in range(n + 1)]
                + [g[k].certified_digits for k in range(n + 1)]
            )
            values.append(RealValue(acc, certified_digits=cert))
    return CoefficientTable(
        kind="A", center=btbl.center, count=btbl.count, values=values,
        provenance=btbl.provenance,
    )


# ---------------------------------------------------------------------------
# Series evaluation
# ---------------------------------------------------------------------------


def _taylor_sum(values, center, s, dps):
    """(sum, truncation estimate) of Σ values[n] (s-center)^n / n!."""
    with workdps(dps):
        s = mp.mpf(s)
        x = s - mp.mpf(center)
        terms = []
        pw = mp.mpf(1)
        for n, v in enumerate(values):
            if n:
                pw *= x / n
            terms.append(v.value * pw)
        total = mp.fsum(terms)
        mags = [abs(t) for t in terms]
        # divergence monitor: trailing terms must not be growing
        if len(mags) >= 6:
            tail = mags[-5:]
            if all(b > a for a, b in zip(tail, tail[1:])) and tail[-1] > abs(
                total
            ) * mp.mpf("1e-2"):
                raise NonConvergenceError(
                    "series terms growing at truncation; s outside the "
                    "convergence range of this table"
                )
        nz = [m_ for m_ in mags if m_ > 0]
        est = min(nz) if nz else mp.mpf(0)
        # geometric continuation of the observed tail ratio
        if len(mags) >= 2 and mags[-2] > 0:
            ratio = min(mags[-1] / mags[-2], mp.mpf("0.9"))
            est = mags[-1] * ratio / (1 - ratio) if mags[-1] else est
        return total, est


def _series_value(total, est, fac, dps) -> RealValue:
    with workdps(dps):
        value = fac * total
        if est == 0:
            cert = mp.mp.dps - 10
        elif value == 0:
            cert = 0
        else:
            rel = est * abs(fac) / abs(value)
            cert = max(0, int(-mp.log10(rel))) if rel < 1 else 0
        return RealValue(value, certified_digits=int(cert))


def Z_from_A(s, tbl: CoefficientTable) -> RealValue:
    """Z(s) reconstructed as (s-1)^{-2} Σ A^(m)(a) (s-a)^m / m!."""
    if tbl.kind != "A":
        raise ValueError("Z_from_A requires an A table")
    dps = max(_table_dps(tbl), 80)
    with workdps(dps):
        s = mp.mpf(s)
        if s == 1:
            raise PoleError("double pole at s=1")
        total, est = _taylor_sum(tbl.values, tbl.center, s, dps)
        return _series_value(total, est, 1 / (s - 1) ** 2, dps)


def Z_from_B(s, tbl: CoefficientTable) -> RealValue:
    """Z(s) reconstructed as Gamma((s+1)/2)/(s-1)^2 Σ B^(n)(a)(s-a)^n/n!."""
    if tbl.kind != "B":
        raise ValueError("Z_from_B requires a B table")
    dps = max(_table_dps(tbl), 80)
    with workdps(dps):
        s = mp.mpf(s)
        if s == 1:
            raise PoleError("double pole at s=1")
        if s < 0 and mp.isint(s) and int(s) % 2 == 1:
            raise PoleError("simple pole at s=%s" % s)
        total, est = _taylor_sum(tbl.values, tbl.center, s, dps)
        fac = mp.gamma((s + 1) / 2) / (s - 1) ** 2
        return _series_value(total, est, fac, dps)


# ---------------------------------------------------------------------------
# Laurent expansion at the double pole and the harmonic constant
# ---------------------------------------------------------------------------


def laurent_C(n_max: int, evaluator, ctx: PrecisionContext,
              oversample: int | None = None) -> CoefficientTable:
    """C_n: derivatives at s=1 of the regular part
    G(s) = Z(s) - 1/(2pi(s-1)^2) + log(2pi)/(2pi(s-1)).

    The stencil excludes the center exactly and keeps every node at
    least 10^-3 away from the pole; the principal-part cancellation
    (~6 digits at that distance) is absorbed by the precision guard.
    """

    def regular_part(s):
        d = s - 1
        if d == 0:
            raise PoleError("regular part sampled at the pole")
        pi2 = 2 * mp.pi
        return evaluator(s) - 1 / (pi2 * d * d) + mp.log(pi2) / (pi2 * d)

    values = derivative_grid(
        regular_part, 1, n_max, ctx, radius=2.0, exclude_center=True,
        oversample=oversample,
    )
    return CoefficientTable(
        kind="C", center=1, count=n_max + 1, values=values, provenance="adr"
    )


def harmonic_H(evaluator, ctx: PrecisionContext) -> RealValue:
    """H = C_0 - log^2(2pi)/(4pi), the zero-analogue of Euler's constant."""
    c0 = laurent_C(0, evaluator, ctx).values[0]
    with workdps(ctx.internal_digits):
        h = c0.value - mp.log(2 * mp.pi) ** 2 / (4 * mp.pi)
        return RealValue(h, certified_digits=c0.certified_digits)


def H_partial_from_zeros(k: int, zeros: ZerosDatabase) -> RealValue:
    """Σ_{n<=k} 1/t_n - (1/4pi) log^2(t_k / 2pi): slowly -> H."""
    if k < 1:
        raise ValueError("k must be >= 1")
    with workdps(max(mp.mp.dps, zeros.min_certified_digits)):
        ts = zeros.ordinates(k)
        total = mp.fsum(1 / t for t in ts)
        total -= mp.log(ts[-1] / (2 * mp.pi)) ** 2 / (4 * mp.pi)
        return RealValue(total, certified_digits=zeros.min_certified_digits)
