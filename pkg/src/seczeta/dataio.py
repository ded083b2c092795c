"""File formats for bundled numeric data.

Three plain-text, diff-able formats are used throughout:

* zeros / stieltjes files: header lines ``# key=value`` (at minimum
  ``precision_digits`` and ``source``; stieltjes files additionally
  ``kind=stieltjes``), then one ``<index> <digit-string>`` entry per line.
* golden reference files: ``<label> | <s-or-index> | <digits> | <source>``
  per line, with ``# key=value`` headers (e.g. a default ``threshold``).

Parsing lives here so the numeric modules can ingest data without
importing the CLI front end.
"""

from __future__ import annotations

import importlib.resources
from dataclasses import dataclass, field
from pathlib import Path

__all__ = [
    "IndexedFile",
    "GoldenEntry",
    "GoldenFile",
    "read_indexed_file",
    "write_indexed_file",
    "read_golden_file",
    "data_path",
]

_ALLOWED_DIGIT_CHARS = set("0123456789.-+eE×^ ")


@dataclass
class IndexedFile:
    """Parsed ``<index> <digit-string>`` file with its headers."""

    headers: dict[str, str]
    entries: list[tuple[int, str]]

    @property
    def precision_digits(self) -> int:
        return int(self.headers.get("precision_digits", "0"))

    @property
    def source(self) -> str:
        return self.headers.get("source", "")


@dataclass
class GoldenEntry:
    label: str
    key: str  # s value or coefficient index, kept textual
    digits: str
    source: str


@dataclass
class GoldenFile:
    headers: dict[str, str]
    entries: list[GoldenEntry] = field(default_factory=list)

    @property
    def threshold(self) -> int:
        return int(self.headers.get("threshold", "30"))


def _parse_headers_and_rows(path: Path):
    headers: dict[str, str] = {}
    rows: list[str] = []
    for raw in path.read_text().splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, val = body.partition("=")
                headers[key.strip()] = val.strip()
            continue
        rows.append(line)
    return headers, rows


def read_indexed_file(path: str | Path) -> IndexedFile:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    headers, rows = _parse_headers_and_rows(path)
    entries: list[tuple[int, str]] = []
    for line in rows:
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise ValueError("malformed entry line: %r" % line)
        idx_text, digits = parts
        if not set(digits) <= _ALLOWED_DIGIT_CHARS:
            raise ValueError("illegal characters in digit string: %r" % digits)
        entries.append((int(idx_text), digits.strip()))
    if not entries:
        raise ValueError("no entries in %s" % path)
    return IndexedFile(headers=headers, entries=entries)


def write_indexed_file(path: str | Path, headers: dict[str, str],
                       entries: list[tuple[int, str]]) -> None:
    lines = ["# %s=%s" % (k, v) for k, v in headers.items()]
    lines += ["%d %s" % (idx, digits) for idx, digits in entries]
    Path(path).write_text("\n".join(lines) + "\n")


def read_golden_file(path: str | Path) -> GoldenFile:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(str(path))
    headers, rows = _parse_headers_and_rows(path)
    out = GoldenFile(headers=headers)
    for line in rows:
        parts = [p.strip() for p in line.split("|")]
        if len(parts) != 4:
            raise ValueError("malformed golden line: %r" % line)
        label, key, digits, source = parts
        if not set(digits) <= _ALLOWED_DIGIT_CHARS:
            raise ValueError("illegal characters in digit string: %r" % digits)
        if not source:
            raise ValueError("golden entry without source citation: %r" % line)
        out.entries.append(GoldenEntry(label, key, digits, source))
    return out


def data_path(name: str) -> Path:
    """Path of a bundled data file (``data/<name>`` inside the package)."""
    root = importlib.resources.files("seczeta") / "data"
    return Path(str(root / name))
