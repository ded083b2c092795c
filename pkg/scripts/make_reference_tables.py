#!/usr/bin/env python3
"""Regenerate the bundled coefficient reference tables.

Writes one indexed text file per table (same format as the bundled data
files) into the output directory:

    zderiv_center2.txt   Z^(n)(2)   n = 0..10        (accelerated route)
    a_center2.txt        A^(n)(2)   n = 0..max-order
    b_center2.txt        B^(n)(2)   n = 0..max-order
    zderiv_center0.txt   Z^(n)(0)   n = 0..max-order
    b_center0.txt        B^(n)(0)   n = 0..max-order
    laurent_center1.txt  C_n        n = 0..max-order
    b_half.txt           B^(n)(1/2) n = 0..max-order  (strip-integral route)

A(s) = (s-1)^2 Z(s), B(s) = A(s)/Gamma((s+1)/2); C_n are the expansion
constants of the regularized function at the double pole s=1.  The full
50-order run takes on the order of ten minutes.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from seczeta.adr import default_zeros_database
from seczeta.dataio import write_indexed_file
from seczeta.hiprec import digit_string, make_context
from seczeta.mellin import B_coeffs_at_half, MellinConfig
from seczeta.series import (
    A_coeffs_from_B,
    B_coeffs,
    Z_derivs_adr,
    laurent_C,
    make_adr_evaluator,
)
from seczeta.specfun import default_stieltjes_store


def _write(path: Path, tbl, digits: int) -> None:
    headers = {
        "kind": tbl.kind,
        "center": str(tbl.center),
        "provenance": tbl.provenance,
        "precision_digits": str(digits),
        "source": "regenerated by scripts/make_reference_tables.py",
    }
    entries = [(n, digit_string(v.value, digits)) for n, v in enumerate(tbl.values)]
    write_indexed_file(path, headers, entries)
    print("wrote %s (%d entries)" % (path, len(entries)))


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="build/tables", help="output directory")
    ap.add_argument("--max-order", type=int, default=50,
                    help="highest derivative order per table")
    ap.add_argument("--digits", type=int, default=50,
                    help="printed digits per entry")
    ap.add_argument("--skip-half", action="store_true",
                    help="skip the strip-integral table at s=1/2 (slowest)")
    args = ap.parse_args()

    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    m_max = args.max_order

    ctx = make_context(30)
    zeros = default_zeros_database()
    ev = make_adr_evaluator(zeros, ctx)

    t0 = time.time()
    # One entire-function stencil at each center feeds both A and B.
    b2 = B_coeffs(2, m_max, ev, ctx, oversample=1)
    _write(out / "b_center2.txt", b2, args.digits)
    _write(out / "a_center2.txt", A_coeffs_from_B(b2, ctx), args.digits)

    zd2 = Z_derivs_adr(2, min(m_max, 10), zeros, ctx)
    _write(out / "zderiv_center2.txt", zd2, min(args.digits, 29))

    b0 = B_coeffs(0, m_max, ev, ctx, oversample=1)
    _write(out / "b_center0.txt", b0, args.digits)

    zd0 = Z_derivs_adr(0, m_max, zeros, ctx)
    _write(out / "zderiv_center0.txt", zd0, args.digits)

    c = laurent_C(m_max, ev, ctx, oversample=2)
    _write(out / "laurent_center1.txt", c, args.digits)

    if not args.skip_half:
        ctx45 = make_context(45)
        bh = B_coeffs_at_half(
            m_max, MellinConfig(), default_stieltjes_store(), ctx45
        )
        _write(out / "b_half.txt", bh, args.digits)

    print("total %.1fs" % (time.time() - t0))


if __name__ == "__main__":
    main()
