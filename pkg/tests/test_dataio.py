"""File-format parsing, writing, and validation."""

import pytest

from seczeta.dataio import (
    data_path,
    read_golden_file,
    read_indexed_file,
    write_indexed_file,
)


def test_bundled_zeros_parse():
    f = read_indexed_file(data_path("zeros_300d.txt"))
    assert f.precision_digits == 300
    assert f.source
    assert len(f.entries) == 200
    assert f.entries[0][0] == 1
    assert f.entries[0][1].startswith("14.134725141734693790457251983562")


def test_bundled_stieltjes_parse():
    f = read_indexed_file(data_path("stieltjes_110d.txt"))
    assert f.headers.get("kind") == "stieltjes"
    assert f.precision_digits == 110
    assert len(f.entries) == 221


def test_indexed_roundtrip(tmp_path):
    path = tmp_path / "t.txt"
    headers = {"precision_digits": "30", "source": "unit test"}
    entries = [(0, "0.875"), (1, "0.40590897213384756573995541397")]
    write_indexed_file(path, headers, entries)
    back = read_indexed_file(path)
    assert back.headers == headers
    assert back.entries == entries


def test_indexed_missing_file():
    with pytest.raises(FileNotFoundError):
        read_indexed_file("/nonexistent/zeros.txt")


def test_indexed_malformed(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("# precision_digits=30\njustoneword\n")
    with pytest.raises(ValueError):
        read_indexed_file(p)


def test_indexed_illegal_chars(tmp_path):
    p = tmp_path / "bad.txt"
    p.write_text("1 14.13abc\n")
    with pytest.raises(ValueError):
        read_indexed_file(p)


def test_golden_parse_bundled():
    g = read_golden_file(data_path("golden/special_values_30d.txt"))
    assert g.threshold == 30
    assert len(g.entries) == 20
    assert all(e.source for e in g.entries)


def test_golden_corrupt_digits(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("Z | 2 | 0.02hello | some source\n")
    with pytest.raises(ValueError):
        read_golden_file(p)


def test_golden_requires_source(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("Z | 2 | 0.023 | \n")
    with pytest.raises(ValueError):
        read_golden_file(p)


def test_golden_wrong_field_count(tmp_path):
    p = tmp_path / "g.txt"
    p.write_text("Z | 2 | 0.023\n")
    with pytest.raises(ValueError):
        read_golden_file(p)
