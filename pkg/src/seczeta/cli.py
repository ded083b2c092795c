"""Command-line front end: evaluation, coefficient tables, zero
extraction, plot grids, and golden-reference verification.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numeric failure (poles, non-convergence, insufficient precision).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

import mpmath as mp

from . import adr, dataio, series, specfun, voros, zerogen
from .hiprec import (
    InsufficientPrecisionError,
    NonConvergenceError,
    PoleError,
    digit_string,
    make_context,
    matched_significant_digits,
    significant_digit_count,
    workdps,
)

__all__ = ["RunConfig", "GoldenReference", "dispatch", "main"]

_METHODS = ("auto", "voros", "adr", "series_a", "series_b", "mellin", "pv")


@dataclass
class RunConfig:
    """Resolved command-line options shared by all subcommands."""

    digits: int = 30
    method: str = "auto"
    a: float | None = None
    N: int | None = None
    zeros_path: str | None = None
    stieltjes_path: str | None = None
    center: str | None = None
    terms: int | None = None
    out: str | None = None
    format: str = "text"

    def __post_init__(self):
        if self.method not in _METHODS:
            raise ValueError("unknown method %r" % self.method)
        if self.digits < 1:
            raise ValueError("digits must be >= 1")
        if self.format not in ("text", "csv", "json-lines"):
            raise ValueError("unknown format %r" % self.format)

    def context(self):
        return make_context(max(30, self.digits))

    def zeros(self):
        if self.zeros_path:
            return adr.load_zeros(self.zeros_path, min_digits=30)
        return adr.default_zeros_database()

    def stieltjes(self):
        if self.stieltjes_path:
            return specfun.load_stieltjes(self.stieltjes_path)
        return specfun.default_stieltjes_store()


@dataclass
class GoldenReference:
    """Reference digit strings with per-entry source citations."""

    entries: list = field(default_factory=list)  # (label, key, digits, source)
    threshold: int = 30

    @classmethod
    def load(cls, path) -> "GoldenReference":
        f = dataio.read_golden_file(path)
        return cls(
            entries=[(e.label, e.key, e.digits, e.source) for e in f.entries],
            threshold=f.threshold,
        )


# ---------------------------------------------------------------------------
# Evaluation dispatch
# ---------------------------------------------------------------------------


def _is_int(s) -> bool:
    return mp.isint(s)


def _check_pole(s):
    if s == 1:
        raise PoleError("double pole at s=1")
    if _is_int(s) and s < 0 and int(s) % 2 != 0:
        raise PoleError("simple pole at negative odd integer s=%s" % int(s))


def _adr_evaluate(s, cfg: RunConfig, ctx):
    zeros = cfg.zeros()
    if cfg.a is not None or cfg.N is not None:
        params = adr.ADRParams(
            a=cfg.a if cfg.a is not None else 0.015,
            N=cfg.N if cfg.N is not None else 100,
            zero_count=min(len(zeros.entries), 40),
        )
    else:
        try:
            params = adr.adr_params_for(cfg.digits, zeros)
        except InsufficientPrecisionError:
            params = adr.ADRParams()
    return adr.Z_adr(s, params, zeros, ctx)


def dispatch(s, cfg: RunConfig, ctx=None):
    """Evaluate Z(s) by the configured (or automatic) route.

    Returns (value, method_name).  value is a Fraction for the exact
    rational points, otherwise a RealValue.
    """
    ctx = ctx or cfg.context()
    s = mp.mpf(s)
    method = cfg.method
    if method == "auto":
        _check_pole(s)
        if s == 0:
            return voros.Z_at_zero(), "voros"
        if _is_int(s) and s < 0:  # negative even integer (odd rejected above)
            return voros.Z_neg_even(int(-s) // 2), "voros"
        if _is_int(s) and s > 0 and int(s) % 2 == 0:
            return voros.Z_even(int(s) // 2, ctx), "voros"
        return _adr_evaluate(s, cfg, ctx), "adr"
    if method == "voros":
        if s == 0:
            return voros.Z_at_zero(), "voros"
        if _is_int(s) and s < 0 and int(s) % 2 == 0:
            return voros.Z_neg_even(int(-s) // 2), "voros"
        if _is_int(s) and s > 0 and int(s) % 2 == 0:
            return voros.Z_even(int(s) // 2, ctx), "voros"
        raise ValueError("closed forms cover 0 and even integers only")
    if method == "adr":
        _check_pole(s)
        return _adr_evaluate(s, cfg, ctx), "adr"
    if method in ("series_a", "series_b"):
        zeros = cfg.zeros()
        evaluator = series.make_adr_evaluator(zeros, ctx)
        center = mp.mpf(cfg.center) if cfg.center is not None else mp.mpf(2)
        terms = cfg.terms if cfg.terms is not None else 20
        if method == "series_a":
            btbl = series.B_coeffs(center, terms, evaluator, ctx)
            atbl = series.A_coeffs_from_B(btbl, ctx)
            return series.Z_from_A(s, atbl, ctx), "series_a"
        btbl = series.B_coeffs(center, terms, evaluator, ctx)
        return series.Z_from_B(s, btbl, ctx), "series_b"
    if method == "mellin":
        from . import mellin

        return (
            mellin.Z_strip(s, mellin.MellinConfig(), ctx, cfg.stieltjes()),
            "mellin",
        )
    if method == "pv":
        from . import mellin

        return mellin.Z_pv(s, mellin.MellinConfig(), ctx), "pv"
    raise ValueError("unknown method %r" % method)


# ---------------------------------------------------------------------------
# Output plumbing
# ---------------------------------------------------------------------------


def _render_value(value, digits: int) -> str:
    if isinstance(value, Fraction):
        with workdps(digits + 15):
            return digit_string(
                mp.mpf(value.numerator) / value.denominator, digits
            )
    return digit_string(value.value, digits)


def _emit(rows, header, cfg: RunConfig, stream):
    """rows: list of dicts sharing the header's keys, in order."""
    out = stream
    close = False
    if cfg.out:
        out = open(cfg.out, "w")
        close = True
    try:
        if cfg.format == "json-lines":
            for r in rows:
                out.write(json.dumps(r) + "\n")
        elif cfg.format == "csv":
            out.write(",".join(header) + "\n")
            for r in rows:
                out.write(",".join(str(r[k]) for k in header) + "\n")
        else:
            widths = {
                k: max(len(k), *(len(str(r[k])) for r in rows)) for k in header
            } if rows else {k: len(k) for k in header}
            out.write(
                "  ".join(k.ljust(widths[k]) for k in header).rstrip() + "\n"
            )
            for r in rows:
                out.write(
                    "  ".join(
                        str(r[k]).ljust(widths[k]) for k in header
                    ).rstrip()
                    + "\n"
                )
    finally:
        if close:
            out.close()


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_eval(args, cfg: RunConfig) -> int:
    value, method = dispatch(args.s, cfg)
    certified = (
        "exact" if isinstance(value, Fraction) else value.certified_digits
    )
    rows = [
        {
            "s": args.s,
            "value": _render_value(value, cfg.digits),
            "certified": certified,
            "method": method,
        }
    ]
    _emit(rows, ["s", "value", "certified", "method"], cfg, sys.stdout)
    return 0


def cmd_coeffs(args, cfg: RunConfig) -> int:
    ctx = cfg.context()
    zeros = cfg.zeros()
    kind = args.kind
    center_text = cfg.center if cfg.center is not None else args.center
    if center_text is None:
        raise ValueError("--center is required for coeffs")
    center = mp.mpf(center_text)
    count = args.count
    if kind == "C" and center != 1:
        raise ValueError("C coefficients are defined at center 1 only")
    evaluator = series.make_adr_evaluator(zeros, ctx)
    if kind == "Zderiv":
        tbl = series.Z_derivs_adr(center, count - 1, zeros, ctx)
    elif kind == "A":
        if center > mp.mpf("1.5"):
            zd = series.Z_derivs_from_zeros(center, count - 1, zeros)
            tbl = series.A_coeffs(center, count - 1, zd)
        else:
            btbl = series.B_coeffs(center, count - 1, evaluator, ctx)
            tbl = series.A_coeffs_from_B(btbl, ctx)
    elif kind == "B":
        tbl = series.B_coeffs(center, count - 1, evaluator, ctx)
    elif kind == "C":
        tbl = series.laurent_C(count - 1, evaluator, ctx)
    else:
        raise ValueError("unknown coefficient kind %r" % kind)
    entries = [
        (n, digit_string(tbl.values[n].value, cfg.digits))
        for n in range(tbl.count)
    ]
    headers = {
        "kind": kind,
        "center": mp.nstr(center, 10),
        "count": str(count),
        "precision_digits": str(cfg.digits),
        "source": "computed by seczeta coeffs",
    }
    if cfg.out:
        dataio.write_indexed_file(cfg.out, headers, entries)
    else:
        for k, v in headers.items():
            sys.stdout.write("# %s=%s\n" % (k, v))
        for n, d in entries:
            sys.stdout.write("%d %s\n" % (n, d))
    return 0


def cmd_zeros(args, cfg: RunConfig) -> int:
    ctx = cfg.context()
    m = args.m
    if m < 1:
        raise ValueError("m must be >= 1")
    rows = []
    if args.n_max == 1:
        reports = [zerogen.extract_first_zero(m, ctx)]
    else:
        predecessors = adr.load_zeros(
            cfg.zeros_path or dataio.data_path("zeros_1000d.txt"),
            min_digits=cfg.digits,
        )
        z_value = voros.Z_even(m, ctx)
        known = []
        reports = []
        for n in range(1, args.n_max + 1):
            if n == 1:
                reports.append(zerogen.extract_first_zero(m, ctx))
            else:
                reports.append(
                    zerogen.extract_next_zero(known, m, ctx, z_value=z_value)
                )
            known.append(
                (
                    predecessors.ordinate(n).value,
                    predecessors.min_certified_digits,
                )
            )
    for r in reports:
        rows.append(
            {
                "n": r.n,
                "m": r.m,
                "estimate": digit_string(r.estimate.value, cfg.digits),
                "matched_digits": r.matched_digits_vs_reference,
                "inputs": r.inputs_provenance,
            }
        )
    _emit(
        rows,
        ["n", "m", "estimate", "matched_digits", "inputs"],
        cfg,
        sys.stdout,
    )
    return 0


_POLE_EXCLUSION = mp.mpf("1e-3")


def _near_pole(s) -> bool:
    if abs(s - 1) < _POLE_EXCLUSION:
        return True
    n = mp.nint(s)
    return (
        n < 0 and int(n) % 2 != 0 and abs(s - n) < _POLE_EXCLUSION
    )


def cmd_grid(args, cfg: RunConfig) -> int:
    lo, hi, step = mp.mpf(args.lo), mp.mpf(args.hi), mp.mpf(args.step)
    if not (lo < hi and step > 0):
        raise ValueError("need lo < hi and step > 0")
    rows = []
    s = lo
    any_sample = False
    while s <= hi + step / 2:
        if _near_pole(s):
            rows.append(
                {"s": mp.nstr(s, 10), "value": "", "flag": "pole-adjacent"}
            )
        else:
            value, _ = dispatch(s, cfg)
            rows.append(
                {
                    "s": mp.nstr(s, 10),
                    "value": _render_value(value, cfg.digits),
                    "flag": "",
                }
            )
            any_sample = True
        s += step
    if not any_sample:
        raise ValueError("grid contains no evaluable points")
    _emit(rows, ["s", "value", "flag"], cfg, sys.stdout)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    golden = GoldenReference.load(args.golden)
    rows = []
    failures = 0
    for label, key, digits, source in golden.entries:
        if label != "Z":
            raise ValueError("verify handles Z-value entries; got %r" % label)
        want = min(golden.threshold, significant_digit_count(digits))
        entry_cfg = RunConfig(
            digits=max(cfg.digits, want + 10),
            method=cfg.method,
            a=cfg.a,
            N=cfg.N,
            zeros_path=cfg.zeros_path,
            stieltjes_path=cfg.stieltjes_path,
            format=cfg.format,
        )
        value, method = dispatch(key, entry_cfg)
        if isinstance(value, Fraction):
            with workdps(want + 15):
                got = matched_significant_digits(
                    mp.mpf(value.numerator) / value.denominator, digits
                )
        else:
            got = matched_significant_digits(value.value, digits)
        ok = got >= want
        if not ok:
            failures += 1
        rows.append(
            {
                "label": label,
                "s": key,
                "matched": got,
                "required": want,
                "status": "pass" if ok else "FAIL",
                "method": method,
                "source": source,
            }
        )
    _emit(
        rows,
        ["label", "s", "matched", "required", "status", "method", "source"],
        cfg,
        sys.stdout,
    )
    return 1 if failures else 0


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--digits", type=int, default=30)
    shared.add_argument("--method", choices=_METHODS, default="auto")
    shared.add_argument("--a", type=float, default=None,
                        help="continuation split parameter")
    shared.add_argument("--N", type=int, default=None,
                        help="singular-series truncation")
    shared.add_argument("--zeros", dest="zeros_path", default=None)
    shared.add_argument("--stieltjes", dest="stieltjes_path", default=None)
    shared.add_argument("--center", default=None)
    shared.add_argument("--terms", type=int, default=None)
    shared.add_argument("--out", default=None)
    shared.add_argument("--format", choices=("text", "csv", "json-lines"),
                        default="text")
    p = argparse.ArgumentParser(
        prog="seczeta",
        parents=[shared],
        description="Evaluate the secondary zeta function over the "
        "imaginary parts of the Riemann zeta zeros.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eval", parents=[shared], help="evaluate Z(s)")
    pe.add_argument("s")
    pe.set_defaults(func=cmd_eval)

    pc = sub.add_parser("coeffs", parents=[shared],
                        help="write a coefficient table")
    pc.add_argument("kind", choices=("Zderiv", "A", "B", "C"))
    pc.add_argument("--count", type=int, default=11)
    pc.set_defaults(func=cmd_coeffs)

    pz = sub.add_parser("zeros", parents=[shared],
                        help="extract zeros from Z(2m)")
    pz.add_argument("--n-max", dest="n_max", type=int, default=1)
    pz.add_argument("--m", type=int, required=True)
    pz.set_defaults(func=cmd_zeros)

    pg = sub.add_parser("grid", parents=[shared],
                        help="sample Z(s) on a grid")
    pg.add_argument("lo")
    pg.add_argument("hi")
    pg.add_argument("step")
    pg.set_defaults(func=cmd_grid)

    pv = sub.add_parser("verify", parents=[shared],
                        help="check a golden reference file")
    pv.add_argument("golden")
    pv.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        cfg = RunConfig(
            digits=args.digits,
            method=args.method,
            a=args.a,
            N=args.N,
            zeros_path=args.zeros_path,
            stieltjes_path=args.stieltjes_path,
            center=getattr(args, "center", None),
            terms=args.terms,
            out=args.out,
            format=args.format,
        )
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2
    try:
        return args.func(args, cfg)
    except (PoleError, NonConvergenceError, InsufficientPrecisionError) as exc:
        sys.stderr.write("numeric failure: %s\n" % exc)
        return 3
    except (ValueError, FileNotFoundError) as exc:
        sys.stderr.write("error: %s\n" % exc)
        return 2


if __name__ == "__main__":
    sys.exit(main())
