"""Arbitrary-precision evaluation of the secondary zeta function
Z(s) = sum over n of t_n^(-s), where t_n are the imaginary parts of the
non-trivial Riemann zeta zeros, by five independent methods:

* closed forms for Z(2m), Z(0), Z(-2m), Z'(0)            (module voros)
* an analytic continuation via a split Mellin integral    (module adr)
* Taylor / A- / B-series continuations                    (module series)
* the Laurent expansion at the double pole s = 1          (module series)
* a Mellin-transform continuation centered at s = 1/2     (module mellin)

plus extraction of individual zeros from Z(2m), including directly from
primes through the prime zeta function (module zerogen).
"""

__version__ = "0.1.0"
