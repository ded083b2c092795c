"""Command-line behavior: dispatch, exit codes, file round-trips."""

import json
from fractions import Fraction

import mpmath as mp
import pytest

from seczeta.cli import RunConfig, dispatch, main
from seczeta.dataio import data_path, read_indexed_file, write_indexed_file
from seczeta.hiprec import PoleError


class TestRunConfig:
    def test_rejects_bad_method(self):
        with pytest.raises(ValueError):
            RunConfig(method="newton")

    def test_rejects_bad_digits(self):
        with pytest.raises(ValueError):
            RunConfig(digits=0)

    def test_rejects_bad_format(self):
        with pytest.raises(ValueError):
            RunConfig(format="xml")


class TestDispatch:
    def test_negative_even_is_exact_rational(self):
        # s=-2 must come from the closed form, never a continuation
        value, method = dispatch(-2, RunConfig())
        assert method == "voros"
        assert isinstance(value, Fraction)
        assert value == Fraction(-9, 32)

    def test_zero_is_exact_rational(self):
        value, method = dispatch(0, RunConfig())
        assert method == "voros"
        assert value == Fraction(7, 8)

    def test_positive_even_uses_closed_form(self):
        value, method = dispatch(2, RunConfig())
        assert method == "voros"
        assert abs(value.value - mp.mpf("0.023104993")) < 1e-8

    def test_generic_point_uses_continuation(self):
        value, method = dispatch(mp.mpf("2.5"), RunConfig())
        assert method == "adr"
        assert value.certified_digits >= 25

    def test_poles_raise(self):
        for s in (1, -3, -5):
            with pytest.raises(PoleError):
                dispatch(s, RunConfig())

    def test_voros_method_rejects_generic_point(self):
        with pytest.raises(ValueError):
            dispatch(mp.mpf("2.5"), RunConfig(method="voros"))


class TestEvalCommand:
    def test_exact_point(self, capsys):
        assert main(["eval", "-2"]) == 0
        out = capsys.readouterr().out
        assert "-0.28125" in out
        assert "exact" in out
        assert "voros" in out

    def test_pole_is_numeric_failure(self, capsys):
        assert main(["eval", "1"]) == 3
        assert "numeric failure" in capsys.readouterr().err

    def test_negative_odd_pole(self, capsys):
        assert main(["eval", "-3"]) == 3

    def test_bad_method_is_usage_error(self):
        assert main(["eval", "2", "--method", "newton"]) == 2

    def test_csv_format(self, capsys):
        assert main(["eval", "-2", "--format", "csv"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "s,value,certified,method"
        assert lines[1].split(",")[2:] == ["exact", "voros"]

    def test_json_lines_format(self, capsys):
        assert main(["eval", "-2", "--format", "json-lines"]) == 0
        row = json.loads(capsys.readouterr().out.splitlines()[0])
        assert row["method"] == "voros"
        assert row["value"].startswith("-0.28125")


class TestCoeffsCommand:
    def test_round_trip_is_byte_identical(self, tmp_path):
        f1 = tmp_path / "zd.txt"
        f2 = tmp_path / "zd_copy.txt"
        assert main([
            "coeffs", "Zderiv", "--center", "2", "--count", "4",
            "--out", str(f1),
        ]) == 0
        parsed = read_indexed_file(f1)
        assert [n for n, _ in parsed.entries] == [0, 1, 2, 3]
        write_indexed_file(f2, parsed.headers, parsed.entries)
        assert f1.read_bytes() == f2.read_bytes()

    def test_c_requires_center_one(self, capsys):
        assert main(["coeffs", "C", "--center", "2", "--count", "3"]) == 2


class TestZerosCommand:
    def test_first_zero(self, capsys):
        assert main(["zeros", "--m", "5"]) == 0
        out = capsys.readouterr().out
        assert "14.10" in out  # m=5 estimate approaches t_1 from below

    def test_bad_order_is_usage_error(self, capsys):
        assert main(["zeros", "--m", "0"]) == 2


class TestGridCommand:
    def test_pole_window_is_flagged(self, capsys):
        assert main(["grid", "0.5", "1.5", "0.25", "--digits", "10"]) == 0
        lines = capsys.readouterr().out.splitlines()
        flagged = [ln for ln in lines if "pole-adjacent" in ln]
        assert len(flagged) == 1
        assert flagged[0].startswith("1.0")

    def test_all_pole_grid_is_rejected(self, capsys):
        assert main(["grid", "0.9995", "1.0005", "0.0005"]) == 2

    def test_bad_range(self, capsys):
        assert main(["grid", "2", "1", "0.5"]) == 2


class TestVerifyCommand:
    def test_bundled_references_pass(self, capsys):
        path = str(data_path("golden/special_values_30d.txt"))
        assert main(["verify", path]) == 0
        out = capsys.readouterr().out
        assert "FAIL" not in out

    def test_corrupt_reference_fails(self, tmp_path, capsys):
        bad = tmp_path / "bad.txt"
        bad.write_text(
            "# threshold=10\n"
            "Z | -2 | -0.29125 | made up\n"
        )
        assert main(["verify", str(bad)]) == 1
        assert "FAIL" in capsys.readouterr().out

    def test_missing_file_is_usage_error(self, tmp_path):
        assert main(["verify", str(tmp_path / "nope.txt")]) == 2
