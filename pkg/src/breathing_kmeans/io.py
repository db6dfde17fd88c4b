"""Whitespace-delimited text format for datasets and codebooks.

One point per line, ``d`` decimal numbers separated by whitespace, UTF-8.
Blank lines and lines starting with ``#`` are ignored. Values are written
with ``repr`` so a save/load round trip is bit-exact.
"""

from __future__ import annotations

import os

import numpy as np


class DataFormatError(ValueError):
    def __init__(self, path, lineno: int, message: str):
        self.path = str(path)
        self.lineno = lineno
        super().__init__(f"{path}:{lineno}: {message}")


def load_matrix(path: str | os.PathLike) -> np.ndarray:
    rows: list[list[float]] = []
    width = None
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            try:
                row = [float(tok) for tok in text.split()]
            except ValueError as exc:
                raise DataFormatError(path, lineno, f"not a number ({exc})") from None
            if not all(np.isfinite(row)):
                raise DataFormatError(path, lineno, "non-finite value")
            if width is None:
                width = len(row)
            elif len(row) != width:
                raise DataFormatError(path, lineno, f"expected {width} columns, found {len(row)}")
            rows.append(row)
    if not rows:
        raise DataFormatError(path, 0, "no data rows")
    return np.array(rows, dtype=np.float64)


def format_matrix(M: np.ndarray, header: str | None = None) -> str:
    lines = [f"# {line}" for line in header.splitlines()] if header else []
    lines.extend(" ".join(repr(float(v)) for v in row) for row in np.atleast_2d(M))
    return "\n".join(lines) + "\n"


def save_matrix(path: str | os.PathLike, M: np.ndarray, header: str | None = None) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(format_matrix(M, header))
