"""Shared fixtures: precision contexts, bundled data, reference loaders.

Expensive artifacts (50-order coefficient tables, the deep even value
Z(500), the regularized-expansion table at s=1) are session-scoped so
the acceptance module and the unit modules share one computation.
"""

from __future__ import annotations

import pytest

from seczeta.adr import default_zeros_database
from seczeta.dataio import data_path, read_golden_file
from seczeta.hiprec import make_context, mpf_from_digits
from seczeta.mellin import MellinConfig
from seczeta.series import (
    A_coeffs_from_B,
    B_coeffs,
    laurent_C,
    make_adr_evaluator,
)
from seczeta.specfun import default_stieltjes_store


@pytest.fixture(scope="session")
def ctx30():
    return make_context(30)


@pytest.fixture(scope="session")
def ctx50():
    return make_context(50)


@pytest.fixture(scope="session")
def ctx120():
    return make_context(120)


@pytest.fixture(scope="session")
def zeros():
    return default_zeros_database()


@pytest.fixture(scope="session")
def zeros_1000d():
    return default_zeros_database("zeros_1000d.txt")


@pytest.fixture(scope="session")
def stieltjes_store():
    return default_stieltjes_store()


@pytest.fixture(scope="session")
def mellin_cfg():
    return MellinConfig()


@pytest.fixture(scope="session")
def golden():
    """Loader: golden('special_values_30d') -> GoldenFile."""

    def load(name):
        return read_golden_file(data_path("golden/%s.txt" % name))

    return load


@pytest.fixture(scope="session")
def golden_map(golden):
    """golden_map(name, label) -> {key: (mpf, digit-string)}."""

    def load(name, label):
        out = {}
        for e in golden(name).entries:
            if e.label == label:
                out[e.key] = (mpf_from_digits(e.digits), e.digits)
        return out

    return load


@pytest.fixture(scope="session")
def adr_evaluator(zeros, ctx30):
    return make_adr_evaluator(zeros, ctx30)


@pytest.fixture(scope="session")
def b2_table(adr_evaluator, ctx30):
    """50-order derivative table of (s-1)^2 Z(s)/Gamma((s+1)/2) at s=2.

    oversample=1: the generator is O(1) and entire, so the absolute
    coefficient error stays below ~1e-46 n! without pushing the stencil's
    internal precision past what the bundled zeros database supports.
    """
    return B_coeffs(2, 50, adr_evaluator, ctx30, oversample=1)


@pytest.fixture(scope="session")
def a2_table(b2_table, ctx30):
    return A_coeffs_from_B(b2_table, ctx30)


@pytest.fixture(scope="session")
def b0_table(adr_evaluator, ctx30):
    return B_coeffs(0, 50, adr_evaluator, ctx30, oversample=1)


@pytest.fixture(scope="session")
def laurent_table(adr_evaluator, ctx30):
    """C_0..C_24 at the double pole (24 orders make the s=1.5
    reconstruction converge past 15 digits)."""
    return laurent_C(24, adr_evaluator, ctx30, oversample=2)


@pytest.fixture(scope="session")
def z500(ctx1300):
    from seczeta.voros import Z_even

    return Z_even(250, ctx1300)


@pytest.fixture(scope="session")
def ctx1300():
    return make_context(1300)
