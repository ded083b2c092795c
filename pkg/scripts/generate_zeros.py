#!/usr/bin/env python3
"""Regenerate the bundled Riemann-zeta zero ordinates.

Produces two files under src/seczeta/data/:

* zeros_300d.txt  — t_1 .. t_200 at 300 digits (drives the analytic
  continuation's zero sum; the top ordinate caps the achievable
  continuation precision at roughly 0.68 * t_max digits).
* zeros_1000d.txt — t_1 .. t_11 at 1000 digits (predecessor inputs for
  the zero-extraction recurrence, which needs predecessors far more
  accurate than the zero being extracted).

Each value is recomputed with mpmath's zetazero at extra guard precision
and validated by the residual |zeta(1/2 + i t_n)| before being written.
"""

import pathlib
import sys
import time

from mpmath import mp, zetazero, zeta, mpc

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
from seczeta.dataio import write_indexed_file  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "seczeta" / "data"


def generate(count: int, digits: int, name: str) -> None:
    mp.dps = digits + 20
    entries = []
    t0 = time.time()
    for n in range(1, count + 1):
        t = zetazero(n).imag
        residual = abs(zeta(mpc(0.5, t)))
        if residual > mp.mpf(10) ** (-(digits - 5)):
            raise RuntimeError("zero %d failed residual check: %s" % (n, residual))
        with mp.workdps(digits):
            entries.append((n, mp.nstr(+t, digits, strip_zeros=False)))
        if n % 20 == 0:
            print("  %s: %d/%d (%.1fs)" % (name, n, count, time.time() - t0))
    write_indexed_file(
        DATA / name,
        {
            "precision_digits": str(digits),
            "source": "mpmath zetazero, residual-validated |zeta(1/2+it_n)| < 1e-%d"
            % (digits - 5),
        },
        entries,
    )
    print("wrote %s (%d entries, %d digits)" % (name, count, digits))


def main() -> None:
    DATA.mkdir(exist_ok=True)
    generate(200, 300, "zeros_300d.txt")
    generate(11, 1000, "zeros_1000d.txt")


if __name__ == "__main__":
    main()
