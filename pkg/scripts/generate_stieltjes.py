#!/usr/bin/env python3
"""Regenerate the bundled Stieltjes constants gamma_0 .. gamma_220.

These feed the eta-coefficient recurrence used by the Mellin-route pole
smoothing; 110 digits leaves ample guard over every consumer's target.
gamma_0 is cross-checked against Euler's constant before writing.
"""

import pathlib
import sys
import time

from mpmath import mp, stieltjes, euler

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))
from seczeta.dataio import write_indexed_file  # noqa: E402

DATA = pathlib.Path(__file__).resolve().parents[1] / "src" / "seczeta" / "data"

COUNT = 220
DIGITS = 110


def main() -> None:
    DATA.mkdir(exist_ok=True)
    mp.dps = DIGITS + 15
    if abs(stieltjes(0) - euler) > mp.mpf(10) ** (-DIGITS):
        raise RuntimeError("gamma_0 does not match Euler's constant")
    entries = []
    t0 = time.time()
    for n in range(COUNT + 1):
        value = stieltjes(n)
        with mp.workdps(DIGITS):
            entries.append((n, mp.nstr(+value, DIGITS, strip_zeros=False)))
        if n % 25 == 0:
            print("  stieltjes: %d/%d (%.1fs)" % (n, COUNT, time.time() - t0))
    write_indexed_file(
        DATA / "stieltjes_110d.txt",
        {
            "precision_digits": str(DIGITS),
            "kind": "stieltjes",
            "source": "mpmath stieltjes at %d working digits; gamma_0 checked "
            "against Euler's constant" % (DIGITS + 15),
        },
        entries,
    )
    print("wrote stieltjes_110d.txt (0..%d, %d digits)" % (COUNT, DIGITS))


if __name__ == "__main__":
    main()
